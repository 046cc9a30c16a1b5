"""Weights on rich lines and decode verification reports."""

from pydantic import Field, model_validator

from .base import KznModel, Vector
from .geometry import Line


class WeightFunction(KznModel):
    """π on the points a + λu of a line, stored by λ."""

    line: Line
    weights: tuple[int, ...]

    @model_validator(mode="after")
    def _check_weights(self) -> "WeightFunction":
        if len(self.weights) != self.line.modulus:
            raise ValueError("one weight per line parameter λ is required")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        return self

    @property
    def total(self) -> int:
        return sum(self.weights)


class DecodeReport(KznModel):
    p: int
    k: int
    ell: int
    n: int
    base: Vector
    direction: Vector
    lift: Vector
    weights: tuple[int, ...]
    exponents_checked: int = Field(ge=0)
    mismatches: tuple[Vector, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.mismatches
