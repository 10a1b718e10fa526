"""
Logging Setup

Configures structlog once for the process. Reports go to stdout, so every log
line is routed to stderr (and optionally a rotating file).
"""

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

import structlog

from .config import LoggingConfig, config

_configured = False


def configure_logging(settings: Optional[LoggingConfig] = None, force: bool = False) -> None:
    """Configure structlog and the stdlib root logger from the logging section"""
    global _configured
    if _configured and not force:
        return

    settings = settings or config.logging
    level = getattr(logging, settings.level.upper(), logging.INFO)

    handlers: list = [logging.StreamHandler(sys.stderr)]
    if settings.log_to_file:
        log_path = Path(settings.log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.handlers.RotatingFileHandler(
            log_path,
            maxBytes=settings.max_log_size,
            backupCount=settings.backup_count,
        ))

    logging.basicConfig(format="%(message)s", level=level, handlers=handlers, force=True)

    if settings.renderer == "json":
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
    _configured = True
