"""
Structured Logging Module

Console diagnostics for fdots. Output goes to stderr so that command results
on stdout stay machine-readable.
"""

import logging
import sys
from pathlib import Path
from typing import Optional, TextIO

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class ColoredFormatter(logging.Formatter):
    """Level-colored formatter, active only when the stream is a terminal."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
    }
    RESET = "\033[0m"

    def __init__(self, fmt=None, datefmt=None, use_colors: bool = True, stream: TextIO = None):
        super().__init__(fmt, datefmt)
        stream = stream or sys.stderr
        self.use_colors = use_colors and hasattr(stream, "isatty") and stream.isatty()

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        if self.use_colors and record.levelname in self.COLORS:
            return f"{self.COLORS[record.levelname]}{message}{self.RESET}"
        return message


def setup_logger(
    name: str = "fdots",
    level: str = "WARNING",
    log_file: Optional[str] = None,
    use_colors: bool = True,
) -> logging.Logger:
    """
    Configure a logger writing to stderr and optionally to a file.

    Args:
        name: Logger name (default: 'fdots')
        level: Log level name
        log_file: Optional log file path
        use_colors: Color console output when stderr is a terminal

    Returns:
        logging.Logger: Configured logger instance

    Example:
        >>> logger = setup_logger('fdots', level='DEBUG')
        >>> logger.info("Store opened")
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, str(level).upper(), logging.WARNING))
    logger.handlers.clear()

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(ColoredFormatter(LOG_FORMAT, DATE_FORMAT, use_colors, sys.stderr))
    logger.addHandler(console)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path, encoding="utf-8")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT, DATE_FORMAT))
        logger.addHandler(file_handler)
        logger.info(f"Logging to file: {path}")

    logger.propagate = False
    return logger


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


_default_logger: Optional[logging.Logger] = None


def init_framework_logger(level: str = "WARNING", log_file: Optional[str] = None) -> logging.Logger:
    """Configure the package-wide ``fdots`` logger once per process."""
    global _default_logger
    _default_logger = setup_logger("fdots", level=level, log_file=log_file)
    return _default_logger
