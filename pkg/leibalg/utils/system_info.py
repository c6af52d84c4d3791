"""
Host information for debug logs. Never part of a report.
"""

import os
import platform

import psutil


def get_system_info():
    """Collect platform, interpreter and memory figures."""
    memory = psutil.virtual_memory()
    return {
        'platform': platform.platform(),
        'python_version': platform.python_version(),
        'cpu_count': os.cpu_count(),
        'memory_total_gb': memory.total / (1024**3),
        'memory_available_gb': memory.available / (1024**3)
    }


def log_system_info(logger):
    """Write the host information to ``logger`` at DEBUG level."""
    info = get_system_info()
    logger.debug(f"Platform: {info['platform']}")
    logger.debug(f"Python version: {info['python_version']}")
    logger.debug(f"CPU count: {info['cpu_count']}")
    logger.debug(f"Memory total: {info['memory_total_gb']:.2f} GB")
    logger.debug(f"Memory available: {info['memory_available_gb']:.2f} GB")
    return info
