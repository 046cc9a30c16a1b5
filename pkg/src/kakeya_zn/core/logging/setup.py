"""Centralized logging setup with Logfire integration.

Logs are structured JSON on stderr; stdout belongs to report output.
Logfire only exports when LOGFIRE_TOKEN is present.
"""

import logging
import sys

import logfire
import structlog
from structlog.processors import CallsiteParameter, CallsiteParameterAdder
from structlog.types import EventDict, Processor, WrappedLogger

from kakeya_zn.core.config import settings

from .base import get_logger
from .context import get_log_context

__all__ = ["add_run_context", "get_logger", "setup_logging"]


def add_run_context(
    _logger: WrappedLogger,
    _method_name: str,
    event_dict: EventDict,
) -> EventDict:
    """Attach the run context and tag errors with their type."""
    for key, value in get_log_context().items():
        event_dict.setdefault(key, value)
    if "error" in event_dict:
        event_dict["error_type"] = type(event_dict["error"]).__name__
    return event_dict


def setup_logging(level: str | None = None, json_output: bool | None = None) -> None:
    """Set up structlog and Logfire for the CLI process.

    Args:
        level: Minimum level name; defaults to settings.log_level.
        json_output: JSON lines when true, console rendering otherwise;
            defaults to settings.log_json.
    """
    level_name = (level or settings.log_level).upper()
    numeric_level = logging.getLevelNamesMapping().get(level_name, logging.INFO)
    render_json = settings.log_json if json_output is None else json_output

    logfire.configure(send_to_logfire="if-token-present", console=False, service_name="kakeya-zn")

    processors: list[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=True),
        CallsiteParameterAdder(
            parameters=[
                CallsiteParameter.FILENAME,
                CallsiteParameter.LINENO,
                CallsiteParameter.FUNC_NAME,
            ]
        ),
        add_run_context,
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
        # Must come before the final renderer
        logfire.StructlogProcessor(),
        structlog.processors.JSONRenderer() if render_json else structlog.dev.ConsoleRenderer(colors=False),
    ]

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        # main() may run many times per process, each time with a fresh stderr
        cache_logger_on_first_use=False,
    )

    formatter = structlog.stdlib.ProcessorFormatter(
        processor=structlog.processors.JSONRenderer(),
        foreign_pre_chain=processors[:-2],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.handlers = [handler]
    root_logger.setLevel(numeric_level)

