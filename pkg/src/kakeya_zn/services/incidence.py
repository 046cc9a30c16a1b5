"""The matrices M_{p^ℓ,n}, certified rank bounds, rotations and the rich-line inequality.

M_{p^ℓ,n} has rows and columns indexed by (Z/p^ℓZ)^n in lexicographic order
(first coordinate most significant) and entry z^{⟨u,v⟩ mod p^ℓ} over
T̄_ℓ = F_p[z]/⟨z^{p^ℓ} − 1⟩.
"""

import math
import random
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
from numpy.typing import NDArray
from sympy import Matrix

from kakeya_zn.algebra.fp_poly import x_power_minus_one
from kakeya_zn.algebra.linalg import RingMatrix, rank_fp_quot
from kakeya_zn.algebra.residues import binom_exact, binom_real, ceil_fraction, factorize, p_valuation
from kakeya_zn.core.base import ErrorLevel
from kakeya_zn.core.concurrency import parallel_map
from kakeya_zn.core.config import settings
from kakeya_zn.core.decorators import with_error_handling
from kakeya_zn.core.errors import InvalidInputError, check_budget
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import (
    Direction,
    KakeyaWitness,
    LiftedDirectionSet,
    PointSet,
    RankChainRow,
    RestrictedRankReport,
    RichLineReport,
    RotationMatrix,
    RotationSearchResult,
    Vector,
)

from .geometry import canonicalize, enumerate_projective, projective_count, richness

logger = get_logger(__name__)


@dataclass(frozen=True, slots=True)
class MMatrix:
    """M_{p^ℓ,n} together with its row index."""

    p: int
    ell: int
    n: int
    vectors: tuple[Vector, ...]
    exponents: NDArray[np.int64]
    matrix: RingMatrix

    @property
    def size(self) -> int:
        return len(self.vectors)

    def index(self, u: Sequence[int]) -> int:
        """Row of u: its base-p^ℓ digits, first coordinate most significant."""
        q = self.p**self.ell
        idx = 0
        for x in u:
            idx = idx * q + x % q
        return idx

    def rows_for(self, vectors: Sequence[Sequence[int]]) -> list[int]:
        return [self.index(u) for u in vectors]


@lru_cache(maxsize=16)
def build_M(p: int, ell: int, n: int) -> MMatrix:
    """M_{p^ℓ,n} over F_p[z]/⟨z^{p^ℓ} − 1⟩."""
    if ell < 1 or n < 1:
        raise InvalidInputError(
            "build_M needs ℓ >= 1 and n >= 1",
            details={"source": "incidence", "operation": "build_M", "ell": ell, "n": n},
        )
    q = p**ell
    check_budget("rank_row_budget", settings.rank_row_budget, q**n, source="incidence", operation="build_M")
    vectors = tuple(product(range(q), repeat=n))
    grid = np.asarray(vectors, dtype=np.int64).reshape(-1, n)
    exponents = grid @ grid.T % q
    exponents.setflags(write=False)
    matrix = RingMatrix.fp_quot_monomials(p, x_power_minus_one(p, q), exponents)
    return MMatrix(p=p, ell=ell, n=n, vectors=vectors, exponents=exponents, matrix=matrix)


def restrict_M(M: MMatrix, rows: Sequence[int]) -> RingMatrix:
    """M(V): the rows listed, all columns."""
    return M.matrix.take_rows(rows)


def rank_M(p: int, ell: int, n: int) -> int:
    return rank_fp_quot(build_M(p, ell, n).matrix)


# Diagonal valuations


def diag_valuation(j: int, p: int) -> int:
    """w-adic valuation of Π_{i<j} (z^j − z^i) at z = 1 + w, i.e. Σ_{l=1}^{j} p^{v_p(l)}."""
    if j < 0:
        raise InvalidInputError(
            f"diagonal index must be nonnegative, got {j}",
            details={"source": "incidence", "operation": "diag_valuation", "j": j},
        )
    return sum(p ** p_valuation(l, p) for l in range(1, j + 1))


def diag_valuation_direct(j: int, p: int, ell: int) -> int:
    """Valuation of the same product computed in F_p[w]/⟨w^{p^ℓ}⟩; p^ℓ when it vanishes."""
    q = p**ell

    def one_plus_w_pow(e: int) -> NDArray[np.int64]:
        coeffs = np.zeros(q, dtype=np.int64)
        top = min(e, q - 1)
        coeffs[: top + 1] = [math.comb(e, i) % p for i in range(top + 1)]
        return coeffs

    product_ = np.zeros(q, dtype=np.int64)
    product_[0] = 1
    zj = one_plus_w_pow(j)
    for i in range(j):
        factor = (zj - one_plus_w_pow(i)) % p
        product_ = np.convolve(product_, factor)[:q] % p
    nonzero = np.flatnonzero(product_)
    return int(nonzero[0]) if nonzero.size else q


def relaxed_valuation_bound(j: int, p: int, ell: int) -> Fraction:
    """The per-index relaxation j(ℓ − (ℓ−1)/p), reported for comparison only."""
    return j * (ell - Fraction(ell - 1, p))


def diag_rank_bound(p: int, ell: int, n: int) -> int:
    """Number of (j_1..j_n) ∈ [0, p^ℓ)^n with Σ diag_valuation(j_i) ≤ p^ℓ − 1."""
    q = p**ell
    check_budget("rank_row_budget", settings.rank_row_budget, q, source="incidence", operation="diag_rank_bound")
    threshold = q - 1
    valuations = [diag_valuation(j, p) for j in range(q)]
    # counts[t] = number of partial tuples with total valuation t
    counts = [0] * (threshold + 1)
    counts[0] = 1
    for _ in range(n):
        nxt = [0] * (threshold + 1)
        for total, ways in enumerate(counts):
            if ways:
                for v in valuations:
                    if total + v <= threshold:
                        nxt[total + v] += ways
        counts = nxt
    return sum(counts)


def binom_rank_bound(p: int, ell: int, n: int) -> int:
    """⌈C(p^ℓ/ℓ + n, n)⌉."""
    return ceil_fraction(binom_real(Fraction(p**ell, ell) + n, n))


def rank_chain_row(p: int, ell: int, n: int) -> RankChainRow:
    return RankChainRow(
        p=p,
        ell=ell,
        n=n,
        rank=rank_M(p, ell, n),
        diag_bound=diag_rank_bound(p, ell, n),
        binom_bound=binom_rank_bound(p, ell, n),
        binom_certified=ell >= 2,
    )


@with_error_handling(error_level=ErrorLevel.WARNING)
def verify_restricted_rank(p: int, ell: int, n: int) -> RestrictedRankReport:
    """Compare rank M_{p^ℓ,n} with the rank of its projective rows."""
    q = p**ell
    check_budget(
        "restricted_rank_budget",
        settings.restricted_rank_budget,
        q**n,
        source="incidence",
        operation="verify_restricted_rank",
    )
    M = build_M(p, ell, n)
    rows = M.rows_for([d.rep for d in enumerate_projective(q, n)])
    report = RestrictedRankReport(
        p=p,
        ell=ell,
        n=n,
        full_rank=rank_fp_quot(M.matrix),
        restricted_rank=rank_fp_quot(restrict_M(M, rows)),
        restricted_rows=len(rows),
    )
    logger.info("Restricted rank compared", p=p, ell=ell, n=n, full=report.full_rank, restricted=report.restricted_rank)
    return report


# Direction lifts and rotations


def _prime_power(modulus: int) -> tuple[int, int]:
    f = factorize(modulus)
    if not f.is_prime_power:
        raise InvalidInputError(
            f"expected a prime-power modulus, got {modulus}",
            details={"source": "incidence", "operation": "prime_power", "modulus": modulus},
        )
    return f.factors[0]


def lift_directions(directions: Sequence[Direction], ell: int) -> LiftedDirectionSet:
    """Every u mod p^ℓ reducing to a listed direction, grouped by direction."""
    if not directions:
        raise InvalidInputError(
            "lift_directions needs at least one direction; use an empty LiftedDirectionSet otherwise",
            details={"source": "incidence", "operation": "lift_directions"},
        )
    p, k = _prime_power(directions[0].modulus)
    n = directions[0].n
    if ell < k:
        raise InvalidInputError(
            f"ℓ = {ell} is below k = {k}",
            details={"source": "incidence", "operation": "lift_directions", "ell": ell, "k": k},
        )
    if any(d.modulus != p**k or d.n != n for d in directions):
        raise InvalidInputError(
            "directions must share a modulus and a dimension",
            details={"source": "incidence", "operation": "lift_directions"},
        )
    q, step = p**ell, p**k
    lifted = tuple(
        tuple((x + step * t) % q for x, t in zip(d.rep, shift, strict=True))
        for d in directions
        for shift in product(range(p ** (ell - k)), repeat=n)
    )
    return LiftedDirectionSet(p=p, k=k, ell=ell, n=n, base=tuple(directions), lifted=lifted)


def gl_order(p: int, k: int, n: int) -> int:
    """|GL_n(Z/p^kZ)| = p^{(k−1)n²} Π_{i<n} (p^n − p^i)."""
    return p ** ((k - 1) * n * n) * math.prod(p**n - p**i for i in range(n))


def _as_rows(flat: Sequence[int], n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))


def enumerate_gl(p: int, k: int, n: int) -> Iterator[RotationMatrix]:
    """GL_n(Z/p^kZ) as W0 + p·X with W0 ∈ GL_n(F_p), in lexicographic order of (W0, X)."""
    check_budget("gl_budget", settings.gl_budget, gl_order(p, k, n), source="incidence", operation="enumerate_gl")
    q = p**k
    for w0 in product(range(p), repeat=n * n):
        if int(Matrix(_as_rows(w0, n)).det()) % p == 0:
            continue
        for x in product(range(p ** (k - 1)), repeat=n * n):
            entries = [(a + p * b) % q for a, b in zip(w0, x, strict=True)]
            yield RotationMatrix(p=p, k=k, entries=_as_rows(entries, n))


def sample_gl(p: int, k: int, n: int, rng: random.Random) -> RotationMatrix:
    """Uniform element of GL_n(Z/p^kZ) by rejection on the determinant mod p."""
    q = p**k
    while True:
        flat = [rng.randrange(q) for _ in range(n * n)]
        if int(Matrix(_as_rows(flat, n)).det()) % p:
            return RotationMatrix(p=p, k=k, entries=_as_rows(flat, n))


def _rotated_rank(M: MMatrix, rotation: RotationMatrix, directions: Sequence[Direction], ell: int) -> int:
    rotated = sorted({canonicalize(rotation.apply(d.rep), rotation.modulus).rep for d in directions})
    lifted = lift_directions([Direction(modulus=rotation.modulus, rep=rep) for rep in rotated], ell)
    return rank_fp_quot(restrict_M(M, M.rows_for(lifted.lifted)))


def rotation_bound(p: int, k: int, ell: int, n: int, size: int) -> tuple[Fraction, int]:
    """(ε, ⌈ε · C(p^ℓ/ℓ + n, n)⌉) with ε = |D| / |P(Z/p^kZ)^{n−1}|."""
    epsilon = Fraction(size, projective_count(p**k, n))
    return epsilon, ceil_fraction(epsilon * binom_real(Fraction(p**ell, ell) + n, n))


@with_error_handling(error_level=ErrorLevel.WARNING)
def best_rotation_rank(
    p: int,
    k: int,
    ell: int,
    n: int,
    directions: Sequence[Direction],
    budget: int | None = None,
    seed: int | None = None,
) -> RotationSearchResult:
    """Best rank of M_{p^ℓ,n}(lift of W·D) over rotations W.

    Exhaustive over GL_n(Z/p^kZ) when its order fits the budget, otherwise a
    seeded uniform sample. Ties go to the lexicographically least W.
    """
    if not directions:
        raise InvalidInputError(
            "rotation search needs at least one direction",
            details={"source": "incidence", "operation": "best_rotation_rank"},
        )
    limit = settings.gl_budget if budget is None else budget
    M = build_M(p, ell, n)
    exhaustive = gl_order(p, k, n) <= limit
    if exhaustive:
        candidates = list(enumerate_gl(p, k, n))
    else:
        rng = random.Random(settings.random_seed if seed is None else seed)
        candidates = [sample_gl(p, k, n, rng) for _ in range(settings.rotation_samples)]

    ranks = parallel_map(lambda w: _rotated_rank(M, w, directions, ell), candidates)
    best = min(range(len(candidates)), key=lambda i: (-ranks[i], candidates[i].entries))
    epsilon, bound = rotation_bound(p, k, ell, n, len(directions))
    result = RotationSearchResult(
        rotation=candidates[best],
        rank=ranks[best],
        exhaustive=exhaustive,
        candidates_checked=len(candidates),
        epsilon=epsilon,
        bound=bound,
        bound_certified=ell >= 2,
    )
    logger.info(
        "Rotation search finished",
        p=p,
        k=k,
        ell=ell,
        n=n,
        directions=len(directions),
        rank=result.rank,
        bound=bound,
        exhaustive=exhaustive,
    )
    return result


# Rich-line inequality


def _rich_line_factor(p: int, ell: int, n: int, m: int) -> int:
    """C(⌈p^ℓ/m⌉ + n − 1, n)."""
    return binom_exact(-(-(p**ell) // m) + n - 1, n)


@with_error_handling(error_level=ErrorLevel.WARNING)
def rich_line_rank_inequality(points: PointSet, m: int, ell: int, witness: KakeyaWitness) -> RichLineReport:
    """Check |S|·C(⌈p^ℓ/m⌉ + n − 1, n) ≥ rank M_{p^ℓ,n}(D') for the witnessed directions D."""
    p, k = _prime_power(points.N)
    n = points.n
    problems: list[str] = []
    if p**ell < m:
        problems.append(f"p^ℓ = {p**ell} is below m = {m}")
    lines = []
    for line in witness.lines:
        if line.modulus != points.N:
            problems.append(f"witness line for {line.direction.rep} is not mod {points.N}")
            continue
        count = richness(points, line)
        if count < m:
            problems.append(f"direction {line.direction.rep}: witness line has only {count} < {m} points in S")
        lines.append(line)

    factor = _rich_line_factor(p, ell, n, m)
    if lines and ell >= k:
        check_budget(
            "restricted_rank_budget",
            settings.restricted_rank_budget,
            p ** (ell * n),
            source="incidence",
            operation="rich_line_rank_inequality",
        )
        directions = sorted({canonicalize(line.direction.rep, points.N).rep for line in lines})
        lifted = lift_directions([Direction(modulus=points.N, rep=rep) for rep in directions], ell)
        M = build_M(p, ell, n)
        rhs = rank_fp_quot(restrict_M(M, M.rows_for(lifted.lifted)))
    else:
        if ell < k:
            problems.append(f"ℓ = {ell} is below k = {k}")
        rhs = 0
    report = RichLineReport(
        p=p,
        k=k,
        ell=ell,
        n=n,
        m=m,
        size=points.size,
        directions=len(lines),
        lhs=points.size * factor,
        rhs=rhs,
        certified_size_bound=-(-rhs // factor) if factor else 0,
        problems=tuple(problems),
    )
    logger.info("Rich-line inequality checked", p=p, k=k, ell=ell, n=n, m=m, lhs=report.lhs, rhs=rhs)
    return report


def rank_certified_size_bound(points: PointSet, m: int, ell: int, witness: KakeyaWitness) -> int:
    """⌈rank M(D') / C(⌈p^ℓ/m⌉ + n − 1, n)⌉, a lower bound on |S| whenever the witnesses are m-rich."""
    return rich_line_rank_inequality(points, m, ell, witness).certified_size_bound
