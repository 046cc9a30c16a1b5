"""Canonical algebraic protocols."""

from typing import Protocol, Self, runtime_checkable


@runtime_checkable
class FieldElement(Protocol):
    """What exact elimination needs from a scalar: ring operations, zero test and inverse."""

    def __add__(self, other: Self, /) -> Self: ...

    def __sub__(self, other: Self, /) -> Self: ...

    def __mul__(self, other: Self, /) -> Self: ...

    def __neg__(self) -> Self: ...

    def is_zero(self) -> bool: ...

    def inverse(self) -> Self: ...


__all__ = ["FieldElement"]
