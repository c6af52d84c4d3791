"""
Logging for the leibalg commands.

Everything human-facing (log records, the spinner, the suite mirror) goes to
stderr; stdout carries only the rendered report.
"""

import os
import re
import sys
import logging
from contextlib import contextmanager
from datetime import datetime
from pathlib import Path

try:
    from rich.console import Console
    from rich.logging import RichHandler
    from rich.progress import Progress, SpinnerColumn, TextColumn
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LIBRARY_LOGGER = "leibalg"


def setup_logger(name=LIBRARY_LOGGER, log_file=None, level=logging.INFO, use_rich=True):
    """Configure ``name`` (by default the package logger every module logs under).

    Solver sizes, sample rounds and oracle primes are logged by the library
    modules as children of ``leibalg`` and reach these handlers.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)
    logger.propagate = False

    for handler in logger.handlers[:]:
        logger.removeHandler(handler)
        handler.close()

    if use_rich and RICH_AVAILABLE:
        console_handler = RichHandler(
            console=Console(stderr=True),
            rich_tracebacks=True,
            markup=False,
            show_time=False,
            show_path=False
        )
    else:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(logging.Formatter(LOG_FORMAT))

    console_handler.setLevel(level)
    logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir:
            os.makedirs(log_dir, exist_ok=True)

        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        file_handler.setLevel(level)
        logger.addHandler(file_handler)

    return logger


def get_console(stderr=True):
    """Console the theorem suite mirrors its headers and verdicts on, or None without rich."""
    if RICH_AVAILABLE:
        return Console(stderr=stderr)
    return None


def get_progress():
    """Transient stderr spinner, or None without rich."""
    if RICH_AVAILABLE:
        return Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=Console(stderr=True),
            transient=True
        )
    return None


@contextmanager
def spinner(description):
    """Show ``description`` with a spinner while the block runs."""
    progress = get_progress()
    if progress is None:
        yield None
        return
    with progress:
        progress.add_task(description, total=None)
        yield progress


def _slug(label):
    # L1' -> L1p, L2(3/2) -> L2_3_2
    slug = re.sub(r"[^A-Za-z0-9]+", "_", label.replace("'", "p"))
    return slug.strip("_")


def create_log_filename(base_dir=None, label=None, prefix=LIBRARY_LOGGER):
    """Timestamped log path, naming the algebra when ``label`` is given."""
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    parts = [prefix, _slug(label) if label else None, timestamp]
    filename = "_".join(p for p in parts if p) + ".log"

    if base_dir:
        return str(Path(base_dir) / filename)
    return filename
