"""Centralized logging configuration using loguru."""

import os
import sys
from typing import Optional

from dotenv import load_dotenv
from loguru import logger

load_dotenv(override=True)

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss.SSS}</green> | <level>{level: <8}</level> | "
    "<cyan>{name}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {name}:{function}:{line} - {message}"


def configure_logging(level: Optional[str] = None) -> str:
    """
    (Re)install the loguru sinks.

    The console sink writes to stderr; stdout carries the JSON results of the CLI.
    A rotating file sink is added when ``LOG_TO_FILE`` is true.

    Args:
        level: Log level; ``LOG_LEVEL`` (default INFO) when omitted

    Returns:
        str: The level in effect
    """
    level = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    logger.remove()
    logger.add(sys.stderr, level=level, format=CONSOLE_FORMAT, colorize=True)

    if os.getenv("LOG_TO_FILE", "false").lower() == "true":
        logger.add(
            os.getenv("LOG_FILE_PATH", "logs/qvn.log"),
            level=level,
            rotation=os.getenv("LOG_FILE_ROTATION", "100 MB"),
            retention=os.getenv("LOG_FILE_RETENTION", "7 days"),
            compression="zip",
            format=FILE_FORMAT,
        )
    return level


configure_logging()

# Export the configured logger
configured_logger = logger
