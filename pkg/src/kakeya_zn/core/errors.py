"""Specific error types for kakeya-zn."""

from collections.abc import Mapping

from pydantic import JsonValue

from .base import ApplicationError, BudgetErrorDetails, ErrorCode, ErrorDetails, ErrorLevel

StructuredDetails = ErrorDetails | Mapping[str, JsonValue]


class InvalidInputError(ApplicationError, ValueError):
    """A caller passed arguments outside an operation's domain."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message=message, code=ErrorCode.INVALID_INPUT, level=ErrorLevel.WARNING, details=details)


class ModulusMismatchError(InvalidInputError):
    """Operands live in different rings."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message, details)
        self.code = ErrorCode.MODULUS_MISMATCH


class NotPIntegralError(ApplicationError, ArithmeticError):
    """ψ was applied to a value whose cleared denominator vanishes mod p."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message=message, code=ErrorCode.NOT_P_INTEGRAL, level=ErrorLevel.ERROR, details=details)


class NotProjectiveError(InvalidInputError):
    """Some prime power of N sees no unit coordinate."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message, details)
        self.code = ErrorCode.NOT_PROJECTIVE


class AdmissibilityError(InvalidInputError):
    """The requested construction parameters are not of the form k = (p^{s+1}-1)/(p-1)."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message, details)
        self.code = ErrorCode.NOT_ADMISSIBLE


class BudgetExceededError(ApplicationError):
    """An operation would exceed a configured work or memory budget."""

    def __init__(self, message: str, details: BudgetErrorDetails) -> None:
        super().__init__(message=message, code=ErrorCode.BUDGET_EXCEEDED, level=ErrorLevel.WARNING, details=details)


class InternalInvariantError(ApplicationError, RuntimeError):
    """A state the mathematics rules out was reached."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message=message, code=ErrorCode.INTERNAL_INVARIANT, level=ErrorLevel.CRITICAL, details=details)


class FileFormatError(ApplicationError, ValueError):
    """An input document does not match the kzn/1 formats."""

    def __init__(self, message: str, details: StructuredDetails | None = None) -> None:
        super().__init__(message=message, code=ErrorCode.FILE_FORMAT, level=ErrorLevel.ERROR, details=details)


def check_budget(budget: str, limit: int, requested: int, *, source: str, operation: str) -> None:
    """Raise BudgetExceededError when ``requested`` is above ``limit``."""
    if requested > limit:
        raise BudgetExceededError(
            f"{operation} needs {requested} units, above the {budget} limit of {limit}",
            details=BudgetErrorDetails(
                source=source, operation=operation, budget=budget, limit=limit, requested=requested
            ),
        )
