"""Polynomials over F_p and the quotient rings F_p[z]/⟨f⟩.

Coefficient vectors are numpy int64 arrays, lowest degree first. p stays
below 2^31 so products of two residues fit in int64.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from kakeya_zn.core.errors import InvalidInputError, ModulusMismatchError

IntArray = NDArray[np.int64]


def x_power_minus_one(p: int, degree: int) -> tuple[int, ...]:
    """z^degree − 1 over F_p, lowest coefficient first."""
    coeffs = [0] * (degree + 1)
    coeffs[0] = (-1) % p
    coeffs[degree] = 1
    return tuple(coeffs)


def reduce_mod(coeffs: IntArray, modulus: tuple[int, ...], p: int) -> IntArray:
    """Remainder of a polynomial (last axis = degree) by a monic modulus.

    Works on stacks: any leading axes are carried along, which is how whole
    matrices of ring entries get reduced in one pass.
    """
    d = len(modulus) - 1
    if modulus[-1] != 1:
        raise InvalidInputError(
            "quotient modulus must be monic",
            details={"source": "exact-linalg", "operation": "reduce_mod", "modulus": list(modulus)},
        )
    work = np.mod(coeffs, p).astype(np.int64, copy=True)
    tail = np.asarray(modulus[:-1], dtype=np.int64)
    for degree in range(work.shape[-1] - 1, d - 1, -1):
        lead = work[..., degree].copy()
        if not lead.any():
            continue
        work[..., degree] = 0
        work[..., degree - d : degree] = (work[..., degree - d : degree] - lead[..., None] * tail) % p
    result = np.zeros((*work.shape[:-1], d), dtype=np.int64)
    width = min(d, work.shape[-1])
    result[..., :width] = work[..., :width]
    return result


def poly_mul(a: IntArray, b: IntArray, p: int) -> IntArray:
    """Product of two coefficient vectors over F_p (no reduction)."""
    return np.convolve(a, b).astype(np.int64) % p


@dataclass(frozen=True, slots=True)
class FpQuotient:
    """An element of F_p[z]/⟨modulus⟩, stored reduced with deg(modulus) coefficients."""

    p: int
    modulus: tuple[int, ...]
    coeffs: tuple[int, ...]

    @classmethod
    def from_coeffs(cls, p: int, modulus: tuple[int, ...], coeffs: list[int] | tuple[int, ...]) -> "FpQuotient":
        reduced = reduce_mod(np.asarray(coeffs or [0], dtype=np.int64), modulus, p)
        return cls(p=p, modulus=modulus, coeffs=tuple(int(c) for c in reduced))

    @classmethod
    def monomial(cls, p: int, modulus: tuple[int, ...], exponent: int) -> "FpQuotient":
        coeffs = [0] * (exponent + 1)
        coeffs[exponent] = 1
        return cls.from_coeffs(p, modulus, coeffs)

    def _check(self, other: "FpQuotient") -> None:
        if (self.p, self.modulus) != (other.p, other.modulus):
            raise ModulusMismatchError(
                "quotient ring elements over different rings",
                details={"source": "exact-linalg", "operation": "fp_quotient"},
            )

    def __add__(self, other: "FpQuotient") -> "FpQuotient":
        self._check(other)
        return FpQuotient(
            self.p, self.modulus, tuple((a + b) % self.p for a, b in zip(self.coeffs, other.coeffs, strict=True))
        )

    def __mul__(self, other: "FpQuotient") -> "FpQuotient":
        self._check(other)
        product = poly_mul(np.asarray(self.coeffs, dtype=np.int64), np.asarray(other.coeffs, dtype=np.int64), self.p)
        return FpQuotient.from_coeffs(self.p, self.modulus, product.tolist())

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def as_array(self) -> IntArray:
        return np.asarray(self.coeffs, dtype=np.int64)
