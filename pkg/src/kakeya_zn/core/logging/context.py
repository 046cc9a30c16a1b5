"""Run-scoped logging context.

The CLI binds the subcommand and its parameters once; every event logged
while the command runs carries them.
"""

from contextvars import ContextVar

_log_context: ContextVar[dict[str, object] | None] = ContextVar("log_context", default=None)


def get_log_context() -> dict[str, object]:
    """Get a copy of the current logging context."""
    context = _log_context.get()
    return dict(context) if context else {}


def set_log_context(context: dict[str, object]) -> None:
    """Replace the logging context."""
    _log_context.set(dict(context))


def update_log_context(key: str, value: object) -> None:
    """Update a single key in the logging context.

    Args:
        key: Context key to update
        value: Value to set
    """
    context = get_log_context()
    context[key] = value
    _log_context.set(context)


def clear_log_context() -> None:
    """Clear the current logging context."""
    _log_context.set(None)
