"""
Tests for the logging_utils module.
"""

import sys
import logging
import tempfile
from unittest import mock
from pathlib import Path

# Add the parent directory to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from leibalg.utils.logging_utils import (
    setup_logger,
    get_console,
    get_progress,
    create_log_filename,
    spinner,
)


def test_setup_logger():
    """Test setting up a logger."""
    logger = setup_logger("leibalg_test")

    assert logger.name == "leibalg_test"
    assert logger.level == logging.INFO
    assert logger.propagate is False
    assert len(logger.handlers) == 1

    with tempfile.TemporaryDirectory() as temp_dir:
        log_file = Path(temp_dir) / "logs" / "run.log"
        logger = setup_logger("leibalg_test_file", log_file=str(log_file))

        assert len(logger.handlers) == 2
        assert any(isinstance(h, logging.FileHandler) for h in logger.handlers)

        logger.info("Computed der_c")

        assert "Computed der_c" in log_file.read_text()
        for handler in logger.handlers:
            handler.close()


def test_setup_logger_replaces_handlers():
    """Test that repeated setup does not stack handlers."""
    setup_logger("leibalg_test_repeat")
    logger = setup_logger("leibalg_test_repeat")

    assert len(logger.handlers) == 1


def test_setup_logger_with_level():
    """Test setting up a logger with a custom level."""
    logger = setup_logger("leibalg_test_level", level=logging.WARNING)

    assert logger.level == logging.WARNING
    assert logger.handlers[0].level == logging.WARNING


def test_setup_logger_without_rich():
    """Test the plain stderr handler."""
    logger = setup_logger("leibalg_test_plain", use_rich=False)

    assert isinstance(logger.handlers[0], logging.StreamHandler)
    assert logger.handlers[0].stream is sys.stderr


def test_get_console():
    """Test getting a console."""
    with mock.patch("leibalg.utils.logging_utils.RICH_AVAILABLE", True):
        with mock.patch("leibalg.utils.logging_utils.Console") as mock_console:
            get_console()
            mock_console.assert_called_once_with(stderr=True)

    with mock.patch("leibalg.utils.logging_utils.RICH_AVAILABLE", False):
        assert get_console() is None


def test_get_progress():
    """Test getting a spinner."""
    with mock.patch("leibalg.utils.logging_utils.RICH_AVAILABLE", True):
        with mock.patch("leibalg.utils.logging_utils.Progress") as mock_progress:
            get_progress()
            mock_progress.assert_called_once()
            assert mock_progress.call_args.kwargs["transient"] is True

    with mock.patch("leibalg.utils.logging_utils.RICH_AVAILABLE", False):
        assert get_progress() is None


def test_create_log_filename():
    """Test creating a log filename."""
    filename = create_log_filename()
    assert filename.startswith("leibalg_")
    assert filename.endswith(".log")

    with tempfile.TemporaryDirectory() as temp_dir:
        filename = create_log_filename(base_dir=temp_dir)
        assert filename.startswith(temp_dir)
        assert "leibalg_" in filename

    filename = create_log_filename(prefix="suite")
    assert filename.startswith("suite_")


def test_create_log_filename_with_label():
    """Test that the algebra label is made filename-safe."""
    assert create_log_filename(label="L1'").startswith("leibalg_L1p_")
    assert create_log_filename(label="L2(3/2)").startswith("leibalg_L2_3_2_")


def test_spinner():
    """Test the spinner context with and without rich."""
    with mock.patch("leibalg.utils.logging_utils.get_progress") as mock_get_progress:
        progress = mock_get_progress.return_value
        progress.__enter__.return_value = progress
        with spinner("Computing der") as shown:
            assert shown is progress
        progress.add_task.assert_called_once_with("Computing der", total=None)
        progress.__exit__.assert_called_once()

    with mock.patch("leibalg.utils.logging_utils.get_progress", return_value=None):
        with spinner("Computing der") as shown:
            assert shown is None


def test_library_loggers_reach_package_handlers():
    """Test that module loggers under leibalg write to the configured file."""
    with tempfile.TemporaryDirectory() as temp_dir:
        log_file = Path(temp_dir) / "run.log"
        logger = setup_logger(log_file=str(log_file), level=logging.DEBUG)
        logging.getLogger("leibalg.operator_spaces").debug("der_c: 12 samples")

        assert logger.name == "leibalg"
        assert "der_c: 12 samples" in log_file.read_text()
        for handler in logger.handlers:
            handler.close()
        logger.handlers.clear()
