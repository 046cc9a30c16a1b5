"""Structured error context survives from the failure site to the CLI error document."""

import io
import json

import pytest

from kakeya_zn.core.base import ErrorCode, ErrorLevel
from kakeya_zn.core.constants import EXIT_USAGE_OR_IO
from kakeya_zn.core.decorators import with_error_handling
from kakeya_zn.core.errors import (
    BudgetExceededError,
    FileFormatError,
    InvalidInputError,
    ModulusMismatchError,
    NotProjectiveError,
    check_budget,
)
from kakeya_zn.core.handlers import CliErrorHandler


def test_mapping_details_are_preserved_without_mutating_the_caller() -> None:
    context = {"source": "geometry", "operation": "canonicalize", "N": 12, "u": [2, 3]}

    error = NotProjectiveError("no unit coordinate", details=context)

    assert context == {"source": "geometry", "operation": "canonicalize", "N": 12, "u": [2, 3]}
    assert error.details.source == "geometry"
    assert error.details.operation == "canonicalize"
    assert error.details.metadata == {"N": 12, "u": [2, 3]}


@pytest.mark.parametrize(
    "error_type,code,base",
    [
        (InvalidInputError, ErrorCode.INVALID_INPUT, ValueError),
        (ModulusMismatchError, ErrorCode.MODULUS_MISMATCH, ValueError),
        (NotProjectiveError, ErrorCode.NOT_PROJECTIVE, ValueError),
        (FileFormatError, ErrorCode.FILE_FORMAT, ValueError),
    ],
)
def test_error_types_carry_their_code_and_builtin_base(
    error_type: type[InvalidInputError], code: ErrorCode, base: type[Exception]
) -> None:
    error = error_type("bad")

    assert error.code == code
    assert isinstance(error, base)
    assert error.details.source == "unknown"


def test_check_budget_raises_with_budget_details() -> None:
    check_budget("rank_row_budget", 10, 10, source="incidence", operation="build_M")

    with pytest.raises(BudgetExceededError, match="rank_row_budget") as caught:
        check_budget("rank_row_budget", 10, 11, source="incidence", operation="build_M")

    details = caught.value.details
    assert details.budget == "rank_row_budget"  # type: ignore[attr-defined]
    assert details.limit == 10  # type: ignore[attr-defined]
    assert details.requested == 11  # type: ignore[attr-defined]
    assert caught.value.level == ErrorLevel.WARNING


def test_decorator_reraises_the_original_error() -> None:
    @with_error_handling(error_level=ErrorLevel.WARNING)
    def fail() -> None:
        raise InvalidInputError("nope", details={"source": "test", "operation": "fail"})

    with pytest.raises(InvalidInputError, match="nope"):
        fail()


def test_decorator_can_swallow_errors() -> None:
    @with_error_handling(reraise=False)
    def fail() -> int:
        raise RuntimeError("boom")

    assert fail() is None


def test_cli_handler_writes_an_error_document() -> None:
    stream = io.StringIO()
    error = InvalidInputError("m out of range", details={"source": "kakeya", "operation": "verify_kakeya", "m": 9})

    exit_code = CliErrorHandler(stream).handle(error)

    document = json.loads(stream.getvalue())
    assert exit_code == EXIT_USAGE_OR_IO
    assert document["schema"] == "kzn/1"
    assert document["status"] == "ERROR"
    assert document["error_code"] == ErrorCode.INVALID_INPUT.value
    assert document["details"]["operation"] == "verify_kakeya"
    assert document["details"]["metadata"] == {"m": 9}
    assert document["trace_id"]


def test_cli_handler_maps_os_errors_to_file_io() -> None:
    stream = io.StringIO()

    exit_code = CliErrorHandler(stream).handle(FileNotFoundError("missing.json"))

    document = json.loads(stream.getvalue())
    assert exit_code == EXIT_USAGE_OR_IO
    assert document["error_code"] == ErrorCode.FILE_IO.value
    assert "details" not in document
