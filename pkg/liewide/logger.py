import logging
import sys
from typing import Optional, TextIO

import structlog

from liewide.config import settings


def setup_logging(level: Optional[str] = None, stream: Optional[TextIO] = None):
    """
    Set up structured logging using structlog.

    Logs go to stderr by default; stdout is reserved for reports.
    """
    logging.basicConfig(
        level=level or settings.LOG_LEVEL,
        stream=stream or sys.stderr,
        format="%(message)s",
        force=True,
    )

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            structlog.processors.JSONRenderer(),
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


def configure_library_defaults():
    """
    Quiet default for library use: warnings and above on stderr until
    setup_logging is called.
    """
    structlog.configure(
        wrapper_class=structlog.make_filtering_bound_logger(logging.WARNING),
        logger_factory=structlog.PrintLoggerFactory(sys.stderr),
        cache_logger_on_first_use=False,
    )


def get_logger(name: str):
    """
    Get a logger with the specified name.
    """
    return structlog.get_logger(name)


if not structlog.is_configured():
    configure_library_defaults()
