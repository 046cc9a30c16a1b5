"""Exact arithmetic in Q(ζ_{p^k}) and in polynomial quotients over it.

A CycloNumber is a dense vector of φ(p^k) rationals, the coefficients of
1, ζ, ..., ζ^{φ-1} after reduction modulo Φ_{p^k}. The representation is
canonical, so structural equality is field equality. ψ sends ζ to 1 and
reduces mod p.
"""

import math
from collections.abc import Iterable, Sequence
from fractions import Fraction
from functools import lru_cache
from typing import Self

from sympy import QQ, Poly, Rational, symbols

from kakeya_zn.core.errors import InvalidInputError, ModulusMismatchError, NotPIntegralError

from .fp_poly import FpQuotient

_x = symbols("x")

Scalar = int | Fraction


def cyclotomic_poly(p: int, k: int) -> tuple[int, ...]:
    """Φ_{p^k}(x) = Σ_{i<p} x^{i p^{k-1}}, lowest coefficient first."""
    if k < 1:
        raise InvalidInputError(
            "cyclotomic_poly needs k >= 1",
            details={"source": "cyclotomic", "operation": "cyclotomic_poly", "p": p, "k": k},
        )
    step = p ** (k - 1)
    coeffs = [0] * ((p - 1) * step + 1)
    for i in range(p):
        coeffs[i * step] = 1
    return tuple(coeffs)


def _reduce(coeffs: list[Fraction], p: int, k: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient list modulo Φ_{p^k} in place of x^φ ≡ −Σ_{i<p−1} x^{i p^{k−1}}."""
    step = p ** (k - 1)
    phi = (p - 1) * step
    for degree in range(len(coeffs) - 1, phi - 1, -1):
        lead = coeffs[degree]
        if lead:
            coeffs[degree] = Fraction(0)
            for i in range(p - 1):
                coeffs[degree - phi + i * step] -= lead
    if len(coeffs) < phi:
        coeffs.extend([Fraction(0)] * (phi - len(coeffs)))
    return tuple(coeffs[:phi])


@lru_cache(maxsize=64)
def _zeta_powers(p: int, k: int) -> tuple[tuple[Fraction, ...], ...]:
    order = p**k
    powers = []
    for e in range(order):
        coeffs = [Fraction(0)] * (e + 1)
        coeffs[e] = Fraction(1)
        powers.append(_reduce(coeffs, p, k))
    return tuple(powers)


class CycloNumber:
    """An element of Q(ζ_{p^k})."""

    __slots__ = ("coeffs", "k", "p")

    def __init__(self, p: int, k: int, coeffs: Iterable[Scalar] = ()) -> None:
        self.p = p
        self.k = k
        self.coeffs = _reduce([Fraction(c) for c in coeffs], p, k)

    @classmethod
    def _raw(cls, p: int, k: int, coeffs: tuple[Fraction, ...]) -> Self:
        number = cls.__new__(cls)
        number.p, number.k, number.coeffs = p, k, coeffs
        return number

    @classmethod
    def from_scalar(cls, p: int, k: int, value: Scalar) -> Self:
        return cls(p, k, [value])

    @classmethod
    def zero(cls, p: int, k: int) -> Self:
        return cls(p, k)

    @classmethod
    def one(cls, p: int, k: int) -> Self:
        return cls(p, k, [1])

    @classmethod
    def zeta_pow(cls, p: int, k: int, e: int) -> Self:
        """ζ^{e mod p^k}."""
        return cls._raw(p, k, _zeta_powers(p, k)[e % p**k])

    @property
    def phi(self) -> int:
        return len(self.coeffs)

    def _coerce(self, other: "CycloNumber | Scalar") -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if (other.p, other.k) != (self.p, self.k):
                raise ModulusMismatchError(
                    f"Q(ζ_{self.p}^{self.k}) and Q(ζ_{other.p}^{other.k}) cannot be mixed",
                    details={"source": "cyclotomic", "operation": "cyclo_arith"},
                )
            return other
        return CycloNumber.from_scalar(self.p, self.k, other)

    def __add__(self, other: "CycloNumber | Scalar") -> "CycloNumber":
        rhs = self._coerce(other)
        return CycloNumber._raw(self.p, self.k, tuple(a + b for a, b in zip(self.coeffs, rhs.coeffs, strict=True)))

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber._raw(self.p, self.k, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycloNumber | Scalar") -> "CycloNumber":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "CycloNumber":
        return self._coerce(other) - self

    def __mul__(self, other: "CycloNumber | Scalar") -> "CycloNumber":
        if not isinstance(other, CycloNumber):
            scale = Fraction(other)
            return CycloNumber._raw(self.p, self.k, tuple(a * scale for a in self.coeffs))
        rhs = self._coerce(other)
        product = [Fraction(0)] * (2 * self.phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(rhs.coeffs):
                    if b:
                        product[i + j] += a * b
        return CycloNumber._raw(self.p, self.k, _reduce(product, self.p, self.k))

    __rmul__ = __mul__

    def __truediv__(self, other: "CycloNumber | Scalar") -> "CycloNumber":
        if not isinstance(other, CycloNumber):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(ζ)")
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def __pow__(self, exponent: int) -> "CycloNumber":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloNumber.one(self.p, self.k)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | Fraction):
            other = CycloNumber.from_scalar(self.p, self.k, other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return (self.p, self.k, self.coeffs) == (other.p, other.k, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.coeffs))

    def __repr__(self) -> str:
        terms = [f"{c}·ζ^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"CycloNumber({self.p}^{self.k}: {' + '.join(terms) or '0'})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm over Q."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(ζ)")
        f = Poly([Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _x, domain=QQ)
        modulus = Poly(list(reversed(cyclotomic_poly(self.p, self.k))), _x, domain=QQ)
        inverse = f.invert(modulus)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inverse.all_coeffs())]
        return CycloNumber(self.p, self.k, coeffs)

    def denominator(self) -> int:
        """Least common denominator of the coefficients."""
        return math.lcm(*(c.denominator for c in self.coeffs))


def psi_number(x: CycloNumber) -> int:
    """ψ_{p^k}(x) ∈ F_p: ζ ↦ 1, reduce mod p, divide by the image of the cleared denominator."""
    d = x.denominator()
    if d % x.p == 0:
        raise NotPIntegralError(
            f"denominator {d} vanishes mod {x.p}",
            details={"source": "cyclotomic", "operation": "psi_number", "p": x.p, "k": x.k, "denominator": d},
        )
    numerator = sum(int(c * d) for c in x.coeffs)
    return numerator * pow(d, -1, x.p) % x.p


class CycloPoly:
    """A polynomial over Q(ζ) in one variable, optionally reduced modulo a monic h."""

    __slots__ = ("coeffs", "k", "modulus", "p")

    def __init__(
        self,
        p: int,
        k: int,
        coeffs: Sequence[CycloNumber | Scalar] = (),
        modulus: "CycloPoly | None" = None,
    ) -> None:
        self.p = p
        self.k = k
        self.modulus = modulus
        terms = [c if isinstance(c, CycloNumber) else CycloNumber.from_scalar(p, k, c) for c in coeffs]
        if modulus is not None:
            if not modulus.is_monic():
                raise InvalidInputError(
                    "interpolation modulus must be monic",
                    details={"source": "cyclotomic", "operation": "cyclo_poly", "degree": modulus.degree},
                )
            terms = _poly_rem(terms, modulus.coeffs)
        while terms and terms[-1].is_zero():
            terms.pop()
        self.coeffs: tuple[CycloNumber, ...] = tuple(terms)

    @classmethod
    def monomial(cls, p: int, k: int, exponent: int, modulus: "CycloPoly | None" = None) -> "CycloPoly":
        coeffs: list[CycloNumber | Scalar] = [0] * exponent + [1]
        if modulus is None or exponent < modulus.degree:
            return cls(p, k, coeffs, modulus)
        # Square-and-multiply keeps intermediate degrees below 2·deg h
        return cls(p, k, [0, 1], modulus).pow_mod(exponent)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficient(self, i: int) -> CycloNumber:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return CycloNumber.zero(self.p, self.k)

    def padded(self, length: int) -> tuple[CycloNumber, ...]:
        """Coefficients of z^0..z^{length-1}."""
        return tuple(self.coefficient(i) for i in range(length))

    def _like(self, coeffs: Sequence[CycloNumber | Scalar]) -> "CycloPoly":
        return CycloPoly(self.p, self.k, coeffs, self.modulus)

    def __add__(self, other: "CycloPoly") -> "CycloPoly":
        length = max(len(self.coeffs), len(other.coeffs))
        return self._like([self.coefficient(i) + other.coefficient(i) for i in range(length)])

    def __neg__(self) -> "CycloPoly":
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other: "CycloPoly") -> "CycloPoly":
        return self + (-other)

    def __mul__(self, other: "CycloPoly | CycloNumber | Scalar") -> "CycloPoly":
        if not isinstance(other, CycloPoly):
            return self._like([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return self._like([])
        product = [CycloNumber.zero(self.p, self.k) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                product[i + j] = product[i + j] + a * b
        return CycloPoly(self.p, self.k, product, self.modulus or other.modulus)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CycloPoly):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.coeffs))

    def __repr__(self) -> str:
        return f"CycloPoly(degree={self.degree}, coeffs={list(self.coeffs)!r})"

    def pow_mod(self, exponent: int) -> "CycloPoly":
        result = self._like([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def evaluate(self, point: CycloNumber) -> CycloNumber:
        """Horner evaluation; ignores any modulus."""
        value = CycloNumber.zero(self.p, self.k)
        for c in reversed(self.coeffs):
            value = value * point + c
        return value

    def hasse_derivative(self, order: int) -> "CycloPoly":
        """Coefficient of ε^order in f(y + ε) as a polynomial in y."""
        return CycloPoly(
            self.p,
            self.k,
            [self.coeffs[e] * math.comb(e, order) for e in range(order, len(self.coeffs))],
        )


def _poly_rem(terms: list[CycloNumber], modulus: Sequence[CycloNumber]) -> list[CycloNumber]:
    """Remainder of ``terms`` by a monic polynomial."""
    d = len(modulus) - 1
    work = list(terms)
    for degree in range(len(work) - 1, d - 1, -1):
        lead = work[degree]
        if lead.is_zero():
            continue
        work[degree] = lead - lead
        for i in range(d):
            if not modulus[i].is_zero():
                work[degree - d + i] = work[degree - d + i] - lead * modulus[i]
    return work[:d]


def interpolation_modulus(nodes: Sequence[tuple[CycloNumber, int]]) -> CycloPoly:
    """h(y) = Π (y − a_i)^{m_i}."""
    if not nodes:
        raise InvalidInputError(
            "at least one interpolation node is required",
            details={"source": "cyclotomic", "operation": "interpolation_modulus"},
        )
    p, k = nodes[0][0].p, nodes[0][0].k
    h = CycloPoly(p, k, [1])
    for a, multiplicity in nodes:
        factor = CycloPoly(p, k, [-a, 1])
        for _ in range(multiplicity):
            h = h * factor
    return h


def psi_poly(f: CycloPoly) -> FpQuotient:
    """Coefficient-wise ψ into F_p[z]/⟨ψ(h)⟩ (or F_p[z] truncated to f's length when f has no modulus)."""
    if f.modulus is None:
        length = max(len(f.coeffs), 1)
        modulus_image = tuple([0] * length + [1])
    else:
        modulus_image = tuple(psi_number(c) for c in f.modulus.coeffs)
        length = f.modulus.degree
    return FpQuotient.from_coeffs(f.p, modulus_image, [psi_number(c) for c in f.padded(length)])
