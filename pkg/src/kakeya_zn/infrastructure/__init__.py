"""File formats and atomic writes."""

from .files import (
    dumps_csv,
    dumps_json,
    load_point_set,
    load_run_description,
    load_witness,
    parse_point_set,
    point_set_document,
    witness_document,
    write_atomic,
    write_csv,
    write_json,
)

__all__ = [
    "dumps_csv",
    "dumps_json",
    "load_point_set",
    "load_run_description",
    "load_witness",
    "parse_point_set",
    "point_set_document",
    "witness_document",
    "write_atomic",
    "write_csv",
    "write_json",
]
