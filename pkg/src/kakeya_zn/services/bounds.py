"""Closed-form size bounds for Kakeya sets over Z/NZ and the bound table.

Every calculator returns an exact Fraction. Rounding happens only when a
display string is produced for a report.
"""

import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Literal

from kakeya_zn.algebra.residues import ceil_log, factorize
from kakeya_zn.core.constants import DISPLAY_SIGNIFICANT_DIGITS
from kakeya_zn.core.errors import AdmissibilityError, InvalidInputError
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import BoundReport, BoundValue, BranchedBound, Factorization

from .construction import admissible_k, admissible_s, certified_size_bound

logger = get_logger(__name__)


def _as_factorization(N: int | Factorization) -> Factorization:
    return N if isinstance(N, Factorization) else factorize(N)


def _check_dimension(n: int, operation: str) -> None:
    if n < 1:
        raise InvalidInputError(
            f"dimension n must be at least 1, got {n}",
            details={"source": "bounds-cli", "operation": operation, "n": n},
        )


def display(value: Fraction) -> str:
    """Six significant digits, for humans only."""
    return format(value, f".{DISPLAY_SIGNIFICANT_DIGITS}g")


# Lower bounds


def lb_squarefree(N: int | Factorization, n: int) -> Fraction:
    """2^{−rn} N^n for square-free N with r prime factors."""
    _check_dimension(n, "lb_squarefree")
    f = _as_factorization(N)
    if not f.is_squarefree:
        raise InvalidInputError(
            f"N = {f.N} is not square-free",
            details={"source": "bounds-cli", "operation": "lb_squarefree", "N": f.N},
        )
    return Fraction(f.N**n, 2 ** (f.r * n))


def lb_pk(p: int, k: int, n: int) -> Fraction:
    """(kn)^{−n} p^{kn}."""
    _check_dimension(n, "lb_pk")
    return Fraction(p ** (k * n), (k * n) ** n)


def lb_m_eps(p: int, k: int, n: int, m: int, epsilon: Fraction | int) -> BranchedBound:
    """Size bound for (m, ε)-Kakeya sets in (Z/p^kZ)^n.

    The general branch is ε m^n / (2(k + ⌈log_p n⌉))^n. When p > n the
    sharper ε m^n / (k+1)^n · (1 + n/p)^{−n} also holds.
    """
    _check_dimension(n, "lb_m_eps")
    epsilon = Fraction(epsilon)
    if not 1 <= m <= p**k:
        raise InvalidInputError(
            f"m must lie in [1, {p**k}], got {m}",
            details={"source": "bounds-cli", "operation": "lb_m_eps", "m": m},
        )
    if not 0 <= epsilon <= 1:
        raise InvalidInputError(
            f"ε must lie in [0, 1], got {epsilon}",
            details={"source": "bounds-cli", "operation": "lb_m_eps", "epsilon": str(epsilon)},
        )
    general = epsilon * Fraction(m**n, (2 * (k + ceil_log(n, p))) ** n)
    sharper = None
    if p > n:
        sharper = epsilon * Fraction(m**n, (k + 1) ** n) / (1 + Fraction(n, p)) ** n
    return BranchedBound(general=general, sharper=sharper)


def lb_general(N: int | Factorization, n: int) -> BranchedBound:
    """N^n Π_i (2(k_i + ⌈log_{p_i} n⌉))^{−n}, sharpened when every p_i > n."""
    _check_dimension(n, "lb_general")
    f = _as_factorization(N)
    general = Fraction(f.N**n)
    for p, k in f.factors:
        general /= (2 * (k + ceil_log(n, p))) ** n
    sharper = None
    if all(p > n for p in f.primes):
        sharper = Fraction(f.N**n)
        for p, k in f.factors:
            sharper /= (k + 1) ** n * (1 + Fraction(n, p)) ** n
    return BranchedBound(general=general, sharper=sharper)


def recommended_ell(p: int, k: int, n: int) -> int:
    """k + ⌈log_p n⌉, the ℓ that makes the rank argument work."""
    return k + ceil_log(n, p)


# Upper bounds


def ub_construction(p: int, s: int, n: int) -> Fraction:
    """p^{kn} / k^{n−1} · (1 − 1/p)^{−n} with k = (p^{s+1} − 1)/(p − 1)."""
    _check_dimension(n, "ub_construction")
    k = admissible_k(p, s)
    return Fraction(p ** (k * n), k ** (n - 1)) / (1 - Fraction(1, p)) ** n


def ub_construction_N(spec: Sequence[tuple[int, int]], n: int) -> Fraction:
    """N^n / Π k_i^{n−1} · Π (1 − 1/p_i)^{−n} for N = Π p_i^{k_i}."""
    return math.prod((ub_construction(p, s, n) for p, s in spec), start=Fraction(1))


def certified_bound_N(spec: Sequence[tuple[int, int]], n: int) -> int:
    """Product of the per-factor certified sizes n · p^{kn − s(n−1)}."""
    return math.prod(certified_size_bound(p, s, n) for p, s in spec)


def construction_spec(f: Factorization) -> list[tuple[int, int]] | None:
    """The (p, s) pairs realizing N, or None when some k_i is not admissible."""
    try:
        return [(p, admissible_s(p, k)) for p, k in f.factors]
    except AdmissibilityError:
        return None


# Table


def _value(name: str, kind: Literal["lower", "upper"], value: Fraction, note: str = "") -> BoundValue:
    return BoundValue(name=name, kind=kind, value=value, display=display(value), note=note)


def _branched(name: str, bound: BranchedBound) -> list[BoundValue]:
    values = [_value(name, "lower", bound.value, note="max of the applicable branches")]
    values.append(_value(f"{name}.general", "lower", bound.general))
    if bound.sharper is not None:
        values.append(_value(f"{name}.sharper", "lower", bound.sharper))
    return values


def bound_table(
    N: int,
    n: int,
    m: int | None = None,
    epsilon: Fraction | None = None,
    measured_size: int | None = None,
) -> BoundReport:
    """Every bound that applies to (Z/NZ)^n, with consistency flags against a measured size."""
    _check_dimension(n, "bound_table")
    if N < 2:
        raise InvalidInputError(
            f"N must be at least 2, got {N}",
            details={"source": "bounds-cli", "operation": "bound_table", "N": N},
        )
    f = factorize(N)
    notes = ["sharper branches require every p_i > n"]
    bounds = _branched("lb_general", lb_general(f, n))
    ell = None

    if f.is_squarefree:
        bounds.append(_value("lb_squarefree", "lower", lb_squarefree(f, n)))
    if f.is_prime_power:
        p, k = f.factors[0]
        ell = recommended_ell(p, k, n)
        bounds.append(_value("lb_pk", "lower", lb_pk(p, k, n)))
        richness = N if m is None else m
        fraction = Fraction(1) if epsilon is None else Fraction(epsilon)
        bounds.extend(_branched("lb_m_eps", lb_m_eps(p, k, n, richness, fraction)))
    elif m is not None or epsilon is not None:
        notes.append("lb_m_eps applies to prime-power N only")

    spec = construction_spec(f)
    if spec is None:
        notes.append("no admissible construction for this N")
    else:
        bounds.append(_value("ub_construction", "upper", ub_construction_N(spec, n)))
        bounds.append(_value("ub_certified", "upper", Fraction(certified_bound_N(spec, n))))

    full_kakeya = m in (None, N) and (epsilon is None or epsilon == 1)
    respected = None
    met: dict[str, bool] = {}
    if measured_size is not None:
        # a partial (m, ε) set answers only to lb_m_eps
        applicable = [b for b in bounds if b.kind == "lower" and (full_kakeya or b.name.startswith("lb_m_eps"))]
        respected = all(measured_size >= b.value for b in applicable)
        if not full_kakeya:
            notes.append("full-Kakeya lower bounds not checked for an (m, ε) size")
        met = {b.name: measured_size <= b.value for b in bounds if b.kind == "upper"}

    report = BoundReport(
        N=N,
        factors=f.factors,
        n=n,
        m=m,
        epsilon=epsilon,
        recommended_ell=ell,
        bounds=tuple(bounds),
        measured_size=measured_size,
        lower_bounds_respected=respected,
        upper_bounds_met=met,
        notes=tuple(notes),
    )
    logger.info("Computed bound table", N=N, n=n, bounds=len(bounds), lower_bounds_respected=respected)
    return report
