"""Small Kakeya sets over Z/p^kZ from the c-sequence and their CRT products.

With k = (p^{s+1}−1)/(p−1), g(Σ a_j p^j) = Σ a_j c_j p^j has the property
that every slice u ↦ t·u − g(u) takes at most p^{k−s} values. The set

    S_n = ∪_t {t} × I_t^{n−1},   I_t = {t·u − g(u) : u ∈ Z/p^kZ}

contains the line λ ↦ (λ, λu_2 − g(u_2), ..., λu_n − g(u_n)) for every
direction (1, u_2, ..., u_n). The union of the n coordinate-permuted copies
covers every direction class.
"""

import math
import random
from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from numpy.typing import NDArray

from kakeya_zn.algebra.residues import crt_combine_values, p_digits
from kakeya_zn.core.base import ErrorLevel
from kakeya_zn.core.config import settings
from kakeya_zn.core.constants import G_IMAGE_SAMPLES
from kakeya_zn.core.decorators import with_error_handling
from kakeya_zn.core.errors import AdmissibilityError, InvalidInputError, check_budget
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import (
    CSequence,
    CSequenceAudit,
    GImageReport,
    KakeyaConstruction,
    KakeyaWitness,
    Line,
    PointSet,
    Vector,
    ZmodElem,
)

from .geometry import canonicalize, enumerate_projective

logger = get_logger(__name__)


def admissible_k(p: int, s: int) -> int:
    """k = (p^{s+1} − 1)/(p − 1) = 1 + p + ... + p^s."""
    if s < 0:
        raise AdmissibilityError(
            f"s must be nonnegative, got {s}",
            details={"source": "kakeya", "operation": "admissible_k", "p": p, "s": s},
        )
    return (p ** (s + 1) - 1) // (p - 1)


def admissible_s(p: int, k: int) -> int:
    """The s with k = (p^{s+1}−1)/(p−1), or AdmissibilityError."""
    s = 0
    while admissible_k(p, s) < k:
        s += 1
    if admissible_k(p, s) != k:
        raise AdmissibilityError(
            f"k = {k} is not of the form (p^(s+1)-1)/(p-1) for p = {p}",
            details={"source": "kakeya", "operation": "admissible_s", "p": p, "k": k},
        )
    return s


# c-sequence and g


def _top_zero_run(digits: Sequence[int]) -> int:
    run = 0
    for digit in reversed(digits):
        if digit:
            break
        run += 1
    return run


def build_c_sequence(p: int, s: int) -> CSequence:
    """c_0 = p^s − 1, then step down digit by digit.

    Digits run low (index 0) to high (index s−1). A nonzero top digit is
    decremented. Otherwise, with a run of z zero digits at the top starting at
    α = s − z, the value is repeated z more times, then digit α−1 is
    decremented and digits α..s−1 reset to p−1. After 0 the sequence stays 0.
    """
    k = admissible_k(p, s)
    values = [p**s - 1]
    while len(values) < k:
        current = values[-1]
        if current == 0:
            values.append(0)
            continue
        digits = p_digits(current, p, s)
        if digits[-1] > 0:
            digits[-1] -= 1
            values.append(sum(d * p**j for j, d in enumerate(digits)))
            continue
        z = _top_zero_run(digits)
        alpha = s - z
        values.extend([current] * min(z, k - len(values)))
        if len(values) < k:
            digits[alpha - 1] -= 1
            for j in range(alpha, s):
                digits[j] = p - 1
            values.append(sum(d * p**j for j, d in enumerate(digits)))
    return CSequence(p=p, s=s, values=tuple(values))


def audit_c_sequence(c: CSequence) -> CSequenceAudit:
    """Length, zero count, the congruence chain after each first occurrence, and multiplicities."""
    p, s, values = c.p, c.s, c.values
    chain_holds = True
    seen: set[int] = set()
    for beta, value in enumerate(values):
        if value in seen:
            continue
        seen.add(value)
        for i in range(s):
            if beta + i < len(values) and (values[beta + i] - value) % p ** (s - i):
                chain_holds = False
    multiplicity = all(
        values.count(value) <= _top_zero_run(p_digits(value, p, s)) + 1 for value in set(values) if value
    )
    return CSequenceAudit(
        p=p,
        s=s,
        length_matches=len(values) == admissible_k(p, s),
        zero_count=values.count(0),
        congruence_chain_holds=chain_holds,
        multiplicity_holds=multiplicity,
    )


def g_eval(u: ZmodElem, c: CSequence) -> ZmodElem:
    """g(a_0 + a_1 p + ... + a_{k−1} p^{k−1}) = Σ a_j c_j p^j mod p^k."""
    q = c.p**c.k
    if u.modulus != q:
        raise InvalidInputError(
            f"g is defined on Z/{q}Z, got an element mod {u.modulus}",
            details={"source": "kakeya", "operation": "g_eval", "modulus": u.modulus, "expected": q},
        )
    digits = p_digits(u.value, c.p, c.k)
    return ZmodElem.of(sum(a * cj * c.p**j for j, (a, cj) in enumerate(zip(digits, c.values, strict=True))), q)


@lru_cache(maxsize=32)
def _g_table(p: int, s: int) -> NDArray[np.int64]:
    """g(u) for every u in Z/p^kZ, vectorized over the digit expansion."""
    c = build_c_sequence(p, s)
    q = p**c.k
    u = np.arange(q, dtype=np.int64)
    g = np.zeros(q, dtype=np.int64)
    for j, cj in enumerate(c.values):
        g = (g + (u // p**j % p) * (cj * p**j)) % q
    g.setflags(write=False)
    return g


def slice_image(p: int, s: int, t: int) -> NDArray[np.int64]:
    """Sorted image of u ↦ t·u − g(u)."""
    g = _g_table(p, s)
    q = len(g)
    return np.unique((t * np.arange(q, dtype=np.int64) - g) % q)


def slice_image_sizes(p: int, s: int) -> list[int]:
    g = _g_table(p, s)
    q = len(g)
    u = np.arange(q, dtype=np.int64)
    return [int(np.count_nonzero(np.bincount((t * u - g) % q, minlength=q))) for t in range(q)]


def g_image_check(p: int, s: int, mode: str = "exhaustive", seed: int | None = None) -> GImageReport:
    """Largest slice image against p^k/(k(1 − 1/p)) and the sharper p^{k−s}."""
    k = admissible_k(p, s)
    q = p**k
    if mode == "exhaustive":
        check_budget("g_image_budget", settings.g_image_budget, q, source="kakeya", operation="g_image_check")
        ts = list(range(q))
    elif mode == "sampled":
        check_budget("max_grid_points", settings.max_grid_points, q, source="kakeya", operation="g_image_check")
        rng = random.Random(settings.random_seed if seed is None else seed)
        ts = sorted({rng.randrange(q) for _ in range(G_IMAGE_SAMPLES)} | {0})
    else:
        raise InvalidInputError(
            f"unknown g-image mode {mode!r}",
            details={"source": "kakeya", "operation": "g_image_check", "mode": mode},
        )
    g = _g_table(p, s)
    u = np.arange(q, dtype=np.int64)
    sizes = [int(np.count_nonzero(np.bincount((t * u - g) % q, minlength=q))) for t in ts]
    best = int(np.argmax(sizes))
    bound = Fraction(q, k) / (1 - Fraction(1, p))
    return GImageReport(
        p=p,
        s=s,
        k=k,
        mode=mode,
        t_checked=len(ts),
        max_image=sizes[best],
        argmax_t=ts[best],
        bound=bound,
        bound_floor=math.floor(bound),
        sharp_bound=p ** (k - s),
    )


# Constructions


def _place(t: int, rest: Sequence[int], j: int) -> Vector:
    return (*rest[:j], t, *rest[j:])


@with_error_handling(error_level=ErrorLevel.WARNING)
def construct_unit_first(p: int, s: int, n: int) -> tuple[PointSet, KakeyaWitness]:
    """S_n with a witness line for every direction (1, u_2, ..., u_n)."""
    if n < 1:
        raise InvalidInputError(
            f"dimension must be at least 1, got {n}",
            details={"source": "kakeya", "operation": "construct_unit_first", "n": n},
        )
    k = admissible_k(p, s)
    q = p**k
    check_budget("max_grid_points", settings.max_grid_points, q**n, source="kakeya", operation="construct_unit_first")
    g = _g_table(p, s)
    points: set[Vector] = set()
    for t in range(q):
        image = slice_image(p, s, t).tolist()
        points.update((t, *rest) for rest in product(image, repeat=n - 1))
    lines = tuple(
        Line(base=(0, *(int(-g[x]) % q for x in rest)), direction=canonicalize((1, *rest), q))
        for rest in product(range(q), repeat=n - 1)
    )
    return PointSet(N=q, n=n, points=frozenset(points)), KakeyaWitness(lines=lines)


def _pk_witness(p: int, s: int, n: int) -> KakeyaWitness:
    """For each direction: the copy whose free coordinate is the first unit coordinate of its rep."""
    q = p ** admissible_k(p, s)
    g = _g_table(p, s)
    lines = []
    for direction in enumerate_projective(q, n):
        u = direction.rep
        j = next(i for i, x in enumerate(u) if x % p)
        base = tuple(0 if i == j else int(-g[x]) % q for i, x in enumerate(u))
        lines.append(Line(base=base, direction=direction))
    return KakeyaWitness(lines=tuple(lines))


@with_error_handling(error_level=ErrorLevel.WARNING)
def construct_kakeya_pk(p: int, s: int, n: int) -> KakeyaConstruction:
    """Union of the n coordinate-permuted copies of S_n, with a full witness map."""
    unit_first, _ = construct_unit_first(p, s, n)
    points: set[Vector] = set()
    for j in range(n):
        points.update(_place(x[0], x[1:], j) for x in unit_first.points)
    construction = KakeyaConstruction(
        points=PointSet(N=unit_first.N, n=n, points=frozenset(points)),
        witness=_pk_witness(p, s, n),
        unit_first_size=unit_first.size,
        spec=((p, s),),
    )
    logger.info(
        "Constructed Kakeya set",
        p=p,
        s=s,
        k=admissible_k(p, s),
        n=n,
        size=construction.points.size,
        unit_first_size=unit_first.size,
    )
    return construction


def _check_spec(spec: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    ordered = sorted(spec)
    primes = [p for p, _ in ordered]
    if not ordered or len(set(primes)) != len(primes):
        raise InvalidInputError(
            "a construction spec needs at least one (p, s) pair with distinct primes",
            details={"source": "kakeya", "operation": "construct_kakeya_N", "primes": primes},
        )
    return ordered


@with_error_handling(error_level=ErrorLevel.WARNING)
def construct_kakeya_N(spec: Sequence[tuple[int, int]], n: int) -> KakeyaConstruction:
    """Coordinatewise CRT product of the prime-power constructions."""
    ordered = _check_spec(spec)
    if len(ordered) == 1:
        return construct_kakeya_pk(ordered[0][0], ordered[0][1], n)
    parts = [construct_kakeya_pk(p, s, n) for p, s in ordered]
    check_budget(
        "max_grid_points",
        settings.max_grid_points,
        math.prod(part.points.size for part in parts),
        source="kakeya",
        operation="construct_kakeya_N",
    )
    moduli = [part.points.N for part in parts]
    N = math.prod(moduli)

    def combine(vectors: Sequence[Sequence[int]]) -> Vector:
        return tuple(crt_combine_values([v[i] for v in vectors], moduli) for i in range(n))

    points = frozenset(combine(tuple_) for tuple_ in product(*(part.points.sorted_points() for part in parts)))
    component_witness = [part.witness.as_dict() for part in parts]
    lines = []
    for direction in enumerate_projective(N, n):
        bases = [
            component_witness[i][canonicalize(tuple(x % q for x in direction.rep), q).rep].base
            for i, q in enumerate(moduli)
        ]
        lines.append(Line(base=combine(bases), direction=direction))
    construction = KakeyaConstruction(
        points=PointSet(N=N, n=n, points=points),
        witness=KakeyaWitness(lines=tuple(lines)),
        unit_first_size=None,
        spec=tuple(ordered),
    )
    logger.info("Constructed CRT product Kakeya set", N=N, n=n, spec=ordered, size=construction.points.size)
    return construction


# Size accounting


def unit_first_bound(p: int, s: int, n: int) -> int:
    """p^k · (p^{k−s})^{n−1}."""
    k = admissible_k(p, s)
    return p**k * p ** ((k - s) * (n - 1))


def certified_size_bound(p: int, s: int, n: int) -> int:
    """n · p^{kn − s(n−1)}, the size guarantee of the permuted union."""
    k = admissible_k(p, s)
    return n * p ** (k * n - s * (n - 1))


def layered_sum_bound(p: int, s: int, n: int) -> Fraction:
    """Σ_{i=1}^{n} p^{ki} / (k^{i−1} (1 − 1/p)^{i−1})."""
    k = admissible_k(p, s)
    shrink = 1 - Fraction(1, p)
    return sum((Fraction(p ** (k * i), k ** (i - 1)) / shrink ** (i - 1) for i in range(1, n + 1)), Fraction(0))
