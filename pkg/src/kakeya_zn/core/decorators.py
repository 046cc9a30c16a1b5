"""Error handling decorators"""

import inspect
from collections.abc import Callable
from functools import wraps
from typing import ParamSpec, TypeVar, cast

from .base import ApplicationError, ErrorLevel
from .error_context import ErrorContextManager
from .logging import get_logger

logger = get_logger(__name__)
P = ParamSpec("P")
T = TypeVar("T")


def with_error_handling(
    error_level: ErrorLevel = ErrorLevel.ERROR,
    reraise: bool = True,
) -> Callable[[Callable[P, T]], Callable[P, T]]:
    """Log failures of the wrapped function with structured context.

    Args:
        error_level: Severity for exceptions that are not ApplicationErrors
            (ApplicationErrors carry their own level).
        reraise: Whether to re-raise after logging; when false the wrapper
            returns None.

    Returns:
        Decorated function with error handling
    """

    def decorator(func: Callable[P, T]) -> Callable[P, T]:
        original_signature = inspect.signature(func)

        @wraps(func)
        def wrapper(*args: P.args, **kwargs: P.kwargs) -> T:
            try:
                return func(*args, **kwargs)
            except Exception as e:
                level = e.level if isinstance(e, ApplicationError) else error_level
                with ErrorContextManager(e) as ctx:
                    logger.log(
                        level.to_logging_level(),
                        f"Error in {func.__name__}",  # ty:ignore
                        function=func.__name__,  # ty:ignore
                        error_context=ctx.to_dict(),
                    )
                if reraise:
                    raise
                return cast("T", None)

        wrapper.__signature__ = original_signature  # type: ignore
        return wrapper

    return decorator
