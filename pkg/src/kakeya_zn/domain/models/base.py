"""Shared base for immutable domain values."""

from fractions import Fraction
from typing import Annotated

from pydantic import BaseModel, ConfigDict, PlainSerializer, PlainValidator


def _to_fraction(value: object) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or not isinstance(value, int | str):
        raise ValueError("exact rationals accept int, Fraction or 'a/b' strings only")
    return Fraction(value)


# Exact rational that serializes as "a/b" so no float ever enters a document
Rational = Annotated[Fraction, PlainValidator(_to_fraction), PlainSerializer(str, return_type=str)]

Vector = tuple[int, ...]


class KznModel(BaseModel):
    """Frozen base for every serialized domain value; unknown fields are rejected."""

    model_config = ConfigDict(frozen=True, extra="forbid")
