from .base import ApplicationError, ErrorCode, ErrorDetails, ErrorLevel
from .errors import (
    AdmissibilityError,
    BudgetExceededError,
    FileFormatError,
    InternalInvariantError,
    InvalidInputError,
    ModulusMismatchError,
    NotPIntegralError,
    NotProjectiveError,
)
