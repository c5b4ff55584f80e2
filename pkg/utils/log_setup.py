"""Logging setup shared by the CLI and the test suite."""

import sys
from typing import Optional
from loguru import logger

from config.settings import settings


def configure_logging(level: Optional[str] = None) -> None:
    """
    Install a single stderr sink at the requested level.

    Args:
        level: Log level name; defaults to settings.log_level
    """
    logger.remove()
    logger.add(
        sys.stderr,
        level=(level or settings.log_level).upper(),
        format=settings.log_format,
        backtrace=False,
        diagnose=False,
    )
