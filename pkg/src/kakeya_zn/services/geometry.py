"""Projective directions over Z/NZ, lines, richness and CRT decomposition of lines.

A vector is projective when it has a unit coordinate modulo every prime
power of N. Directions are stored by a canonical representative: the unit
multiple whose first coordinate that is a unit mod N equals 1, or, when no
coordinate is a unit mod N, the lexicographically least unit multiple.
"""

import math
from collections.abc import Iterable, Sequence
from functools import lru_cache
from itertools import product

import numpy as np
from numpy.typing import NDArray

from kakeya_zn.algebra.residues import crt_combine_values, factorize
from kakeya_zn.core.errors import InvalidInputError, ModulusMismatchError, NotProjectiveError
from kakeya_zn.domain.models import Direction, Factorization, Line, PointSet, Vector


@lru_cache(maxsize=256)
def _factorization(N: int) -> Factorization:
    return factorize(N)


def _unit_index(u: Sequence[int], p: int) -> int | None:
    return next((j for j, x in enumerate(u) if x % p), None)


def is_projective(u: Sequence[int], N: int) -> bool:
    return all(_unit_index(u, p) is not None for p in _factorization(N).primes)


def canonicalize(u: Sequence[int], N: int) -> Direction:
    """Canonical representative of the unit-multiple class of u mod N."""
    f = _factorization(N)
    reduced = tuple(x % N for x in u)
    if not reduced:
        raise InvalidInputError(
            "a direction needs at least one coordinate",
            details={"source": "geometry", "operation": "canonicalize", "N": N},
        )
    for p, k in f.factors:
        if _unit_index(reduced, p) is None:
            raise NotProjectiveError(
                f"{reduced} has no unit coordinate mod {p}^{k}",
                details={"source": "geometry", "operation": "canonicalize", "N": N, "u": list(reduced)},
            )
    j = next((j for j, x in enumerate(reduced) if math.gcd(x, N) == 1), None)
    if j is not None:
        scale = pow(reduced[j], -1, N)
        return Direction(modulus=N, rep=tuple(x * scale % N for x in reduced))
    orbit = (tuple(x * c % N for x in reduced) for c in range(1, N) if math.gcd(c, N) == 1)
    return Direction(modulus=N, rep=min(orbit))


def _prime_power_reps(p: int, k: int, n: int) -> list[Vector]:
    """Canonical reps mod p^k: x_j = 1, earlier coordinates multiples of p, later ones free."""
    q = p**k
    reps: list[Vector] = []
    for j in range(n):
        before = [range(0, q, p)] * j
        after = [range(q)] * (n - j - 1)
        reps.extend((*head, 1, *tail) for head, tail in product(product(*before), product(*after)))
    return reps


@lru_cache(maxsize=64)
def _enumerate(N: int, n: int) -> tuple[Direction, ...]:
    f = _factorization(N)
    if f.is_prime_power:
        p, k = f.factors[0]
        return tuple(Direction(modulus=N, rep=rep) for rep in sorted(_prime_power_reps(p, k, n)))
    components = [_prime_power_reps(p, k, n) for p, k in f.factors]
    reps = {
        canonicalize(
            [crt_combine_values([part[i] for part in parts], f.moduli) for i in range(n)],
            N,
        ).rep
        for parts in product(*components)
    }
    return tuple(Direction(modulus=N, rep=rep) for rep in sorted(reps))


def enumerate_projective(N: int, n: int) -> list[Direction]:
    """Every direction class of (Z/NZ)^n exactly once, sorted by representative."""
    if N < 2 or n < 1:
        raise InvalidInputError(
            "enumerate_projective needs N >= 2 and n >= 1",
            details={"source": "geometry", "operation": "enumerate_projective", "N": N, "n": n},
        )
    return list(_enumerate(N, n))


def projective_count(N: int, n: int) -> int:
    """Π_i (p_i^{k_i n} − p_i^{(k_i−1) n}) / (p_i^{k_i−1}(p_i − 1))."""
    if N < 2 or n < 1:
        raise InvalidInputError(
            "projective_count needs N >= 2 and n >= 1",
            details={"source": "geometry", "operation": "projective_count", "N": N, "n": n},
        )
    return math.prod(
        (p ** (k * n) - p ** ((k - 1) * n)) // (p ** (k - 1) * (p - 1)) for p, k in _factorization(N).factors
    )


def line_points(line: Line) -> list[Vector]:
    """a + λu for λ = 0..N−1."""
    N, a, u = line.modulus, line.base, line.direction.rep
    return [tuple((ai + lam * ui) % N for ai, ui in zip(a, u, strict=True)) for lam in range(N)]


def richness(points: PointSet, line: Line) -> int:
    """Number of distinct points of the line lying in the set."""
    return sum(1 for x in set(line_points(line)) if x in points.points)


def line_crt_decompose(line: Line, f: Factorization) -> list[Line]:
    """Component lines mod each p_i^{k_i} whose CRT product is the line."""
    if f.N != line.modulus:
        raise ModulusMismatchError(
            f"factorization of {f.N} does not match line modulus {line.modulus}",
            details={"source": "geometry", "operation": "line_crt_decompose"},
        )
    if f.r == 1:
        return [line]
    return [
        Line(base=tuple(x % q for x in line.base), direction=canonicalize(line.direction.rep, q))
        for q in f.moduli
    ]


def _normalizers(direction: Direction) -> list[tuple[int, int, int]]:
    """Per prime power q: (q, j, u_j^{-1} mod q) for the first coordinate of u that is a unit mod q."""
    out = []
    for p, k in _factorization(direction.modulus).factors:
        q = p**k
        j = _unit_index(direction.rep, p)
        if j is None:
            raise NotProjectiveError(
                f"{direction.rep} has no unit coordinate mod {q}",
                details={"source": "geometry", "operation": "line_through"},
            )
        out.append((q, j, pow(direction.rep[j], -1, q)))
    return out


def line_through(x: Sequence[int], direction: Direction) -> Line:
    """The line through x in the given direction, based at its normalized coset representative.

    Modulo each prime power q the base is x − x_j u_j^{-1} u, which has coordinate j
    equal to zero; the bases are then CRT-combined.
    """
    N, u = direction.modulus, direction.rep
    if len(x) != len(u):
        raise InvalidInputError(
            "point and direction dimensions differ",
            details={"source": "geometry", "operation": "line_through"},
        )
    parts = []
    moduli = []
    for q, j, inv in _normalizers(direction):
        shift = x[j] * inv % q
        parts.append([(xi - shift * ui) % q for xi, ui in zip(x, u, strict=True)])
        moduli.append(q)
    base = tuple(crt_combine_values([part[i] for part in parts], moduli) for i in range(len(u)))
    return Line(base=tuple(b % N for b in base), direction=direction)


def direction_lines(direction: Direction) -> list[Line]:
    """The N^{n−1} parallel lines of one direction, in base order."""
    n = direction.n
    normalizers = _normalizers(direction)
    per_prime = []
    for q, j, _ in normalizers:
        ranges = [range(1) if i == j else range(q) for i in range(n)]
        per_prime.append(list(product(*ranges)))
    moduli = [q for q, _, _ in normalizers]
    bases = sorted(
        tuple(crt_combine_values([part[i] for part in parts], moduli) for i in range(n))
        for parts in product(*per_prime)
    )
    return [Line(base=base, direction=direction) for base in bases]


def coset_labels(points: NDArray[np.int64], direction: Direction) -> NDArray[np.int64]:
    """Per-point label columns identifying the line of ``direction`` through each point.

    Two points share a row iff they lie on the same line. Columns are the
    normalized bases modulo each prime power, side by side.
    """
    u = np.asarray(direction.rep, dtype=np.int64)
    columns = []
    for q, j, inv in _normalizers(direction):
        shift = points[:, j] % q * inv % q
        columns.append((points - np.outer(shift, u)) % q)
    return np.concatenate(columns, axis=1)


def label_to_line(label: Sequence[int], direction: Direction) -> Line:
    """Inverse of ``coset_labels`` for one row."""
    n = direction.n
    normalizers = _normalizers(direction)
    moduli = [q for q, _, _ in normalizers]
    parts = [label[i * n : (i + 1) * n] for i in range(len(moduli))]
    base = tuple(crt_combine_values([int(part[c]) for part in parts], moduli) for c in range(n))
    return Line(base=base, direction=direction)


def points_array(points: Iterable[Vector], n: int) -> NDArray[np.int64]:
    array = np.asarray(sorted(points), dtype=np.int64)
    return array.reshape(-1, n)
