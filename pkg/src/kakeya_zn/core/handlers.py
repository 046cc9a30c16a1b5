"""CLI error rendering and exit-code mapping"""

import json
import sys
from typing import TextIO

from .base import ApplicationError, ErrorCode, ErrorLevel
from .constants import EXIT_USAGE_OR_IO, SCHEMA_VERSION
from .error_context import ErrorContext, ErrorContextManager
from .logging import get_logger

logger = get_logger(__name__)


class CliErrorHandler:
    """Turns an exception escaping a subcommand into an error document and exit code.

    Mathematical check failures are not exceptions: commands report them in
    their result document and return exit code 2 themselves. Everything that
    reaches this handler is a usage, budget, format or I/O problem.
    """

    def __init__(self, stream: TextIO | None = None) -> None:
        self.stream = stream

    def _format_response(self, error_context: ErrorContext) -> dict[str, object]:
        error = error_context.error
        response: dict[str, object] = {
            "schema": SCHEMA_VERSION,
            "status": "ERROR",
            "error": str(error),
            "error_code": ErrorCode.UNKNOWN.value,
            "level": ErrorLevel.ERROR.value,
            "trace_id": error_context.trace_id,
        }
        if isinstance(error, ApplicationError):
            response["error_code"] = error.code.value
            response["level"] = error.level.value
            response["details"] = error.details.model_dump(mode="json")
        elif isinstance(error, OSError):
            response["error_code"] = ErrorCode.FILE_IO.value
        return response

    def handle(self, error: BaseException) -> int:
        """Render ``error`` to the stream and return the process exit code."""
        with ErrorContextManager(error) as error_context:
            response = self._format_response(error_context)
            logger.warning(
                "Command failed",
                error_message=response["error"],
                error_code=response["error_code"],
                trace_id=response["trace_id"],
            )
            stream = self.stream or sys.stderr
            stream.write(json.dumps(response, sort_keys=True) + "\n")
        return EXIT_USAGE_OR_IO
