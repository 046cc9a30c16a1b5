"""Entry point for the kzn command.

Exit codes: 0 when every check passes, 2 when a mathematical check fails,
1 for usage, configuration, budget and I/O errors.
"""

import sys
from collections.abc import Sequence

from kakeya_zn.cli import HANDLERS, build_parser
from kakeya_zn.core.config import settings
from kakeya_zn.core.handlers import CliErrorHandler
from kakeya_zn.core.logging import clear_log_context, get_logger, set_log_context, setup_logging, update_log_context

logger = get_logger(__name__)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser(HANDLERS)
    args = parser.parse_args(argv)
    parser.check_combinations(args)
    setup_logging()
    parameters = {key: str(value) for key, value in vars(args).items() if key not in {"command", "handler"}}
    set_log_context({"command": args.command, **parameters})
    try:
        settings.validate_runtime()
        update_log_context("threads", settings.threads)
        logger.info("Running command")
        exit_code = args.handler(args)
        logger.info("Command finished", exit_code=exit_code)
        return exit_code
    except Exception as e:
        return CliErrorHandler().handle(e)
    finally:
        clear_log_context()


if __name__ == "__main__":
    sys.exit(main())
