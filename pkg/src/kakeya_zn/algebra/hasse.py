"""Hasse derivatives, evaluation vectors, composition coefficients and Hermite interpolation.

Everything is exact over Q(ζ_{p^k}). Hasse derivatives are the coefficients
of f(x + ε) in ε, so no factorials ever appear in a denominator.
"""

import math
from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from itertools import product

from kakeya_zn.core.errors import InvalidInputError
from kakeya_zn.domain.models import Vector

from .cyclotomic import CycloNumber, CycloPoly, interpolation_modulus
from .linalg import invert_matrix

Coefficient = int | Fraction | CycloNumber


class MultiPoly:
    """A sparse polynomial in n variables; zero coefficients are never stored."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Vector, Coefficient] | None = None) -> None:
        if n < 1:
            raise InvalidInputError(
                "a polynomial needs at least one variable",
                details={"source": "hasse-decode", "operation": "multi_poly", "n": n},
            )
        self.n = n
        cleaned: dict[Vector, Coefficient] = {}
        for exponent, coeff in (terms or {}).items():
            if len(exponent) != n or any(e < 0 for e in exponent):
                raise InvalidInputError(
                    f"exponent {exponent} is not a vector of {n} nonnegative integers",
                    details={"source": "hasse-decode", "operation": "multi_poly"},
                )
            if not _is_zero(coeff):
                cleaned[tuple(exponent)] = coeff
        self.terms = dict(sorted(cleaned.items()))

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff: Coefficient = 1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultiPoly(n={self.n}, terms={self.terms!r})"

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        merged: dict[Vector, Coefficient] = dict(self.terms)
        for exponent, coeff in other.terms.items():
            merged[exponent] = merged[exponent] + coeff if exponent in merged else coeff
        return MultiPoly(self.n, merged)

    def hasse_derivative(self, alpha: Sequence[int]) -> "MultiPoly":
        """f^{(α)}: each term c·x^v becomes c·Π C(v_i, α_i)·x^{v−α}; terms with v_i < α_i drop."""
        if len(alpha) != self.n:
            raise InvalidInputError(
                "derivative order and variable count differ",
                details={"source": "hasse-decode", "operation": "hasse_derivative", "n": self.n},
            )
        result: dict[Vector, Coefficient] = {}
        for v, coeff in self.terms.items():
            if any(vi < ai for vi, ai in zip(v, alpha, strict=True)):
                continue
            scale = math.prod(math.comb(vi, ai) for vi, ai in zip(v, alpha, strict=True))
            result[tuple(vi - ai for vi, ai in zip(v, alpha, strict=True))] = coeff * scale
        return MultiPoly(self.n, result)

    def evaluate(self, point: Sequence[CycloNumber]) -> CycloNumber:
        first = point[0]
        total = CycloNumber.zero(first.p, first.k)
        for v, coeff in self.terms.items():
            term = CycloNumber.one(first.p, first.k) * coeff if not isinstance(coeff, CycloNumber) else coeff
            for y, e in zip(point, v, strict=True):
                if e:
                    term = term * y**e
            total = total + term
        return total

    def along_curve(self, exponents: Sequence[int], p: int, k: int) -> CycloPoly:
        """The univariate h(y) = f(y^{u_1}, ..., y^{u_n})."""
        coeffs: dict[int, CycloNumber] = {}
        for v, coeff in self.terms.items():
            degree = sum(vi * ui for vi, ui in zip(v, exponents, strict=True))
            value = coeff if isinstance(coeff, CycloNumber) else CycloNumber.from_scalar(p, k, coeff)
            coeffs[degree] = coeffs.get(degree, CycloNumber.zero(p, k)) + value
        top = max(coeffs, default=-1)
        return CycloPoly(p, k, [coeffs.get(d, CycloNumber.zero(p, k)) for d in range(top + 1)])


def _is_zero(value: Coefficient) -> bool:
    return value.is_zero() if isinstance(value, CycloNumber) else value == 0


def monomial_exponents(d: int, n: int) -> list[Vector]:
    """Exponent vectors in [0, d)^n, lexicographic with x_1 most significant."""
    return [tuple(v) for v in product(range(d), repeat=n)]


def hasse_monomial(v: Sequence[int], alpha: Sequence[int], y: Sequence[CycloNumber]) -> CycloNumber:
    """m_v^{(α)}(y) = Π C(v_i, α_i) y_i^{v_i − α_i}."""
    first = y[0]
    value = CycloNumber.one(first.p, first.k)
    for vi, ai, yi in zip(v, alpha, y, strict=True):
        if vi < ai:
            return CycloNumber.zero(first.p, first.k)
        value = value * (yi ** (vi - ai) * math.comb(vi, ai))
    return value


def eval_vector(d: int, n: int, alpha: Sequence[int], y: Sequence[CycloNumber]) -> tuple[CycloNumber, ...]:
    """The row whose column m is m^{(α)}(y), monomials ordered by ``monomial_exponents``."""
    if len(alpha) != n or len(y) != n:
        raise InvalidInputError(
            "derivative order, point and variable count must agree",
            details={"source": "hasse-decode", "operation": "eval_vector", "n": n},
        )
    return tuple(hasse_monomial(v, alpha, y) for v in monomial_exponents(d, n))


def weight_vectors(n: int, max_weight: int) -> Iterator[Vector]:
    """All α ∈ Z_{≥0}^n with wt(α) ≤ max_weight, lexicographic."""
    for alpha in product(range(max_weight + 1), repeat=n):
        if sum(alpha) <= max_weight:
            yield alpha


def _series_mul(a: list[CycloNumber], b: list[CycloNumber], order: int) -> list[CycloNumber]:
    out = [a[0] - a[0] for _ in range(order + 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j in range(order + 1 - i):
            if not b[j].is_zero():
                out[i + j] = out[i + j] + x * b[j]
    return out


def composition_coeffs(exponents: Sequence[int], w: int, gamma: CycloNumber) -> dict[Vector, CycloNumber]:
    """b_{w,α} for h = f∘C with C(y) = y^{u'}: the ε^w coefficient of Π_i Δ_i(ε)^{α_i}.

    Δ_i(ε) = (γ+ε)^{u'_i} − γ^{u'_i} has no constant term, so only wt(α) ≤ w
    contributes; every such α is returned, zeros included.
    """
    if w < 0:
        raise InvalidInputError(
            "derivative weight must be nonnegative",
            details={"source": "hasse-decode", "operation": "composition_coeffs", "w": w},
        )
    p, k = gamma.p, gamma.k
    zero, one = CycloNumber.zero(p, k), CycloNumber.one(p, k)
    deltas: list[list[CycloNumber]] = []
    for u in exponents:
        deltas.append([zero] + [gamma ** (u - j) * math.comb(u, j) if j <= u else zero for j in range(1, w + 1)])

    unit = [one] + [zero] * w
    powers: list[list[list[CycloNumber]]] = []
    for delta in deltas:
        row = [unit]
        for _ in range(w):
            row.append(_series_mul(row[-1], delta, w))
        powers.append(row)

    result: dict[Vector, CycloNumber] = {}
    for alpha in weight_vectors(len(exponents), w):
        series = unit
        for i, a in enumerate(alpha):
            if a:
                series = _series_mul(series, powers[i][a], w)
        result[alpha] = series[w]
    return result


def hermite_coeffs(nodes: Sequence[tuple[CycloNumber, int]]) -> dict[tuple[int, int], CycloPoly]:
    """t_{i,j} with Σ t_{i,j}·f^{(j)}(a_i) ≡ f(z) mod h(z) = Π (z − a_i)^{m_i}.

    Solves the confluent Vandermonde system V[(i,j), e] = C(e, j)·a_i^{e−j}
    on the basis 1, z, ..., z^{deg h − 1}; t_{i,j} is column (i,j) of V^{-1}.
    """
    if not nodes:
        raise InvalidInputError(
            "at least one interpolation node is required",
            details={"source": "hasse-decode", "operation": "hermite_coeffs"},
        )
    points = [a for a, _ in nodes]
    if any(m < 1 for _, m in nodes):
        raise InvalidInputError(
            "node multiplicities must be positive",
            details={"source": "hasse-decode", "operation": "hermite_coeffs"},
        )
    if len(set(points)) != len(points):
        raise InvalidInputError(
            "interpolation nodes must be pairwise distinct",
            details={"source": "hasse-decode", "operation": "hermite_coeffs", "nodes": len(points)},
        )
    p, k = points[0].p, points[0].k
    degree = sum(m for _, m in nodes)
    zero = CycloNumber.zero(p, k)
    labels = [(i, j) for i, (_, m) in enumerate(nodes) for j in range(m)]
    system = [
        [points[i] ** (e - j) * math.comb(e, j) if e >= j else zero for e in range(degree)] for i, j in labels
    ]
    inverse = invert_matrix(system)
    h = interpolation_modulus(nodes)
    return {
        label: CycloPoly(p, k, [inverse[e][col] for e in range(degree)], h) for col, label in enumerate(labels)
    }
