"""Decoding monomials from Hasse evaluations along a line.

For a line a + λu mod p^k, a lift u' of u mod p^ℓ and weights π with
Σπ = p^ℓ, the coefficients

    c_{λ,α} = Σ_{wt(α) ≤ w < π(λ)} t_{λ,w}(z) · ζ^{⟨α,a⟩} · b_{w,α}(ζ^λ)

satisfy Σ_{λ,α} c_{λ,α} f^{(α)}(ζ^{a+λu}) = f(ζ^a ∘ z^{u'}) mod h(z) for every
f, where h = Π (z − ζ^λ)^{π(λ)}. After ψ the monomial x^v decodes to
z^{⟨v,u'⟩ mod p^ℓ} in T̄_ℓ.
"""

import random
from collections.abc import Sequence
from dataclasses import dataclass

from kakeya_zn.algebra.cyclotomic import CycloNumber, CycloPoly, psi_poly
from kakeya_zn.algebra.fp_poly import FpQuotient, x_power_minus_one
from kakeya_zn.algebra.hasse import (
    composition_coeffs,
    eval_vector,
    hasse_monomial,
    hermite_coeffs,
    monomial_exponents,
    weight_vectors,
)
from kakeya_zn.algebra.linalg import RingMatrix, matmul, psi_matrix
from kakeya_zn.algebra.residues import factorize
from kakeya_zn.core.base import ErrorLevel
from kakeya_zn.core.concurrency import parallel_map
from kakeya_zn.core.config import settings
from kakeya_zn.core.constants import DECODE_RANDOM_BASES
from kakeya_zn.core.decorators import with_error_handling
from kakeya_zn.core.errors import InternalInvariantError, InvalidInputError
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import DecodeReport, Line, Vector, WeightFunction

from .geometry import enumerate_projective
from .incidence import lift_directions

logger = get_logger(__name__)


def uniform_weights(line: Line, total: int) -> WeightFunction:
    """Spread ``total`` over the line as evenly as possible, earlier λ first."""
    N = line.modulus
    share, extra = divmod(total, N)
    return WeightFunction(line=line, weights=tuple(share + (1 if lam < extra else 0) for lam in range(N)))


def trim_weights(weights: WeightFunction, target: int) -> WeightFunction:
    """Reduce Σπ to ``target``, taking weight from the largest λ first."""
    if weights.total < target:
        raise InvalidInputError(
            f"weights sum to {weights.total}, below the required {target}",
            details={"source": "hasse-decode", "operation": "trim_weights", "total": weights.total, "target": target},
        )
    trimmed = list(weights.weights)
    excess = weights.total - target
    for lam in reversed(range(len(trimmed))):
        cut = min(excess, trimmed[lam])
        trimmed[lam] -= cut
        excess -= cut
    return WeightFunction(line=weights.line, weights=tuple(trimmed))


@dataclass(frozen=True, slots=True)
class DecodeCoefficients:
    """c_{λ,α} ∈ Q(ζ)[z]/⟨h⟩ for the pairs with wt(α) < π(a + λu)."""

    p: int
    k: int
    ell: int
    line: Line
    lift: Vector
    weights: WeightFunction
    modulus: CycloPoly
    coeffs: dict[tuple[int, Vector], CycloPoly]


def _zeta_vector(p: int, k: int, x: Sequence[int]) -> list[CycloNumber]:
    return [CycloNumber.zeta_pow(p, k, xi) for xi in x]


def _check_lift(line: Line, lift: Sequence[int], ell: int) -> tuple[int, int]:
    f = factorize(line.modulus)
    if not f.is_prime_power:
        raise InvalidInputError(
            "decoding runs over prime-power moduli only",
            details={"source": "hasse-decode", "operation": "decode_coeffs", "modulus": line.modulus},
        )
    p, k = f.factors[0]
    if len(lift) != line.n:
        raise InvalidInputError(
            "lift and line dimensions differ",
            details={"source": "hasse-decode", "operation": "decode_coeffs"},
        )
    if ell < 1 or any(not 0 <= x < p**ell for x in lift):
        raise InvalidInputError(
            f"lift must be a vector of residues mod p^ℓ = {p**ell}",
            details={"source": "hasse-decode", "operation": "decode_coeffs", "lift": list(lift)},
        )
    if tuple(x % line.modulus for x in lift) != line.direction.rep:
        raise InvalidInputError(
            "lift does not reduce to the line's direction",
            details={"source": "hasse-decode", "operation": "decode_coeffs", "lift": list(lift)},
        )
    return p, k


def decode_coeffs(line: Line, lift: Sequence[int], weights: WeightFunction, ell: int) -> DecodeCoefficients:
    """Combine Hermite coefficients at the nodes ζ^λ with composition coefficients along y ↦ y^{u'}."""
    p, k = _check_lift(line, lift, ell)
    if weights.line != line:
        raise InvalidInputError(
            "weights belong to a different line",
            details={"source": "hasse-decode", "operation": "decode_coeffs"},
        )
    pi = trim_weights(weights, p**ell)
    support = [lam for lam, w in enumerate(pi.weights) if w]
    nodes = [(CycloNumber.zeta_pow(p, k, lam), pi.weights[lam]) for lam in support]
    hermite = hermite_coeffs(nodes)
    h = next(iter(hermite.values())).modulus
    a = line.base
    n = line.n

    coeffs: dict[tuple[int, Vector], CycloPoly] = {}
    for i, lam in enumerate(support):
        gamma = nodes[i][0]
        multiplicity = pi.weights[lam]
        for alpha in weight_vectors(n, multiplicity - 1):
            coeffs[(lam, alpha)] = CycloPoly(p, k, [], h)
        for w in range(multiplicity):
            t = hermite[(i, w)]
            for alpha, b in composition_coeffs(lift, w, gamma).items():
                if b.is_zero():
                    continue
                twist = CycloNumber.zeta_pow(p, k, sum(x * y for x, y in zip(alpha, a, strict=True)))
                coeffs[(lam, alpha)] = coeffs[(lam, alpha)] + t * (twist * b)
    return DecodeCoefficients(
        p=p, k=k, ell=ell, line=line, lift=tuple(lift), weights=pi, modulus=h, coeffs=coeffs
    )


def _line_point(line: Line, lam: int) -> Vector:
    return tuple((ai + lam * ui) % line.modulus for ai, ui in zip(line.base, line.direction.rep, strict=True))


def decoded_value(decoded: DecodeCoefficients, v: Sequence[int]) -> CycloPoly:
    """Σ_{λ,α} c_{λ,α} · m_v^{(α)}(ζ^{a+λu}) in Q(ζ)[z]/⟨h⟩."""
    p, k, line = decoded.p, decoded.k, decoded.line
    total = CycloPoly(p, k, [], decoded.modulus)
    for (lam, alpha), c in decoded.coeffs.items():
        value = hasse_monomial(v, alpha, _zeta_vector(p, k, _line_point(line, lam)))
        if not value.is_zero():
            total = total + c * value
    return total


def _expected(p: int, ell: int, v: Sequence[int], lift: Sequence[int]) -> FpQuotient:
    q = p**ell
    return FpQuotient.monomial(p, x_power_minus_one(p, q), sum(x * y for x, y in zip(v, lift, strict=True)) % q)


@with_error_handling(error_level=ErrorLevel.ERROR)
def verify_decode(
    line: Line,
    lift: Sequence[int],
    weights: WeightFunction,
    ell: int,
    test_exponents: Sequence[Vector] | None = None,
) -> DecodeReport:
    """Decode each monomial x^v and compare ψ of the result with z^{⟨v,u'⟩ mod p^ℓ}."""
    decoded = decode_coeffs(line, lift, weights, ell)
    p = decoded.p
    q = p**ell
    exponents = list(test_exponents) if test_exponents is not None else monomial_exponents(q, line.n)
    modulus_image = psi_poly(CycloPoly(p, decoded.k, [1], decoded.modulus)).modulus
    if modulus_image != x_power_minus_one(p, q):
        raise InternalInvariantError(
            "ψ of the interpolation modulus is not z^(p^ℓ) - 1",
            details={"source": "hasse-decode", "operation": "verify_decode", "modulus_image": list(modulus_image)},
        )

    def matches(v: Vector) -> bool:
        image = psi_poly(decoded_value(decoded, v))
        return image.coeffs == _expected(p, ell, v, lift).coeffs

    results = parallel_map(matches, exponents)
    mismatches = tuple(v for v, ok in zip(exponents, results, strict=True) if not ok)
    return DecodeReport(
        p=p,
        k=decoded.k,
        ell=ell,
        n=line.n,
        base=line.base,
        direction=line.direction.rep,
        lift=tuple(lift),
        weights=decoded.weights.weights,
        exponents_checked=len(exponents),
        mismatches=mismatches,
    )


def decode_row(line: Line, lift: Sequence[int], weights: WeightFunction, ell: int) -> RingMatrix:
    """ψ(c-row · 𝒰): the evaluation rows of the line stacked into 𝒰, one per (λ, α).

    The result is a 1 × p^{ℓn} matrix over T̄_ℓ, equal to row u' of M_{p^ℓ,n}.
    """
    decoded = decode_coeffs(line, lift, weights, ell)
    p, k, q, n = decoded.p, decoded.k, decoded.p**ell, line.n
    keys = list(decoded.coeffs)
    c_row = RingMatrix.cyclo_quot(decoded.modulus, [[decoded.coeffs[key] for key in keys]])
    evaluations = RingMatrix.cyclo(
        p, k, [eval_vector(q, n, alpha, _zeta_vector(p, k, _line_point(line, lam))) for lam, alpha in keys]
    )
    return psi_matrix(matmul(c_row, evaluations))


def decode_sweep(
    p: int,
    k: int,
    ell: int,
    n: int,
    *,
    all_directions: bool = True,
    random_bases: int = DECODE_RANDOM_BASES,
    seed: int | None = None,
) -> list[DecodeReport]:
    """verify_decode for every lift of every (or the first) direction, at the origin and at random bases."""
    q = p**k
    rng = random.Random(settings.random_seed if seed is None else seed)
    directions = enumerate_projective(q, n)
    if not all_directions:
        directions = directions[:1]
    reports = []
    for direction in directions:
        bases = [(0,) * n] + [tuple(rng.randrange(q) for _ in range(n)) for _ in range(random_bases)]
        lifts = lift_directions([direction], ell).lifted if ell >= k else ()
        for base in bases:
            line = Line(base=base, direction=direction)
            weights = uniform_weights(line, p**ell)
            for lift in lifts:
                reports.append(verify_decode(line, lift, weights, ell))
    failed = sum(not report.passed for report in reports)
    logger.info("Decode sweep finished", p=p, k=k, ell=ell, n=n, checks=len(reports), failed=failed)
    return reports

