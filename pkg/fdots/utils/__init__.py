"""Logging and configuration helpers."""

from fdots.utils.config_loader import ConfigLoader, load_config
from fdots.utils.logger import get_logger, init_framework_logger, setup_logger

__all__ = ["ConfigLoader", "load_config", "get_logger", "init_framework_logger", "setup_logger"]
