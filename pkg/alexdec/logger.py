"""Logging configuration for alexdec."""

import logging
import sys
from datetime import datetime
from pathlib import Path
from typing import Optional


def setup_logging(debug: bool = False, logfile_dir: Optional[str] = None) -> logging.Logger:
    """Setup logging configuration.

    Reports go to stdout, so the console handler writes to stderr and only
    shows warnings unless debugging.

    Args:
        debug: Enable debug logging level
        logfile_dir: Directory for log files; no log file when None

    Returns:
        Configured logger instance
    """
    level = logging.DEBUG if debug else logging.INFO

    if debug:
        formatter = logging.Formatter(
            "%(asctime)s | %(levelname)s | %(filename)s:%(funcName)s | %(message)s",
            datefmt="%Y-%m-%dT%H:%M:%S",
        )
    else:
        formatter = logging.Formatter(
            "%(asctime)s | %(levelname)s | %(message)s",
            datefmt="%Y-%m-%dT%H:%M:%S",
        )

    handlers: list[logging.Handler] = []

    if logfile_dir is not None:
        timestamp = datetime.now().strftime("%Y-%m-%d_%H%M%S")
        log_path = Path(logfile_dir) / f"alexdec_{timestamp}.log"
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_path, encoding="utf-8")
        file_handler.setFormatter(formatter)
        file_handler.setLevel(level)
        handlers.append(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.DEBUG if debug else logging.WARNING)
    handlers.append(console_handler)

    logger = logging.getLogger()
    logger.setLevel(level)

    # Remove any existing handlers to avoid duplicates
    for handler in logger.handlers[:]:
        logger.removeHandler(handler)

    for handler in handlers:
        logger.addHandler(handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance with the specified name."""
    return logging.getLogger(name)
