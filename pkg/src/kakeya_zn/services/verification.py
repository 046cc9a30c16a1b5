"""(m, ε)-verification of point sets.

For a direction u the lines {a + λu} partition (Z/NZ)^n, so the richest line
is found by labelling every point of S with its line and counting labels.
Verification therefore never scans all N^n base points.
"""

from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from kakeya_zn.algebra.residues import ceil_fraction
from kakeya_zn.core.base import ErrorLevel
from kakeya_zn.core.concurrency import parallel_map
from kakeya_zn.core.config import settings
from kakeya_zn.core.decorators import with_error_handling
from kakeya_zn.core.errors import InvalidInputError, ModulusMismatchError, check_budget
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import Direction, KakeyaWitness, Line, PointSet, VerificationReport

from .geometry import canonicalize, coset_labels, enumerate_projective, label_to_line, points_array, richness

logger = get_logger(__name__)


def richest_line(points: NDArray[np.int64], direction: Direction) -> tuple[int, Line | None]:
    """The line of ``direction`` meeting the points most often; ties go to the least label."""
    if points.size == 0:
        return 0, None
    labels = coset_labels(points, direction)
    unique, counts = np.unique(labels, axis=0, return_counts=True)
    best = int(np.argmax(counts))
    return int(counts[best]), label_to_line(unique[best].tolist(), direction)


def _witness_lookup(points: PointSet, witness: KakeyaWitness) -> dict[tuple[int, ...], Line]:
    lookup: dict[tuple[int, ...], Line] = {}
    for line in witness.lines:
        if line.modulus != points.N or line.n != points.n:
            raise ModulusMismatchError(
                "witness line does not live in the point set's grid",
                details={"source": "kakeya", "operation": "verify_kakeya", "N": points.N, "line_modulus": line.modulus},
            )
        lookup[canonicalize(line.direction.rep, points.N).rep] = line
    return lookup


@with_error_handling(error_level=ErrorLevel.WARNING)
def verify_kakeya(points: PointSet, m: int, witness: KakeyaWitness | None = None) -> VerificationReport:
    """Count the directions having an m-rich line in S.

    Without a witness every line of every direction is considered; with one,
    only the supplied line per direction is checked and missing directions
    count as unsatisfied.
    """
    N, n = points.N, points.n
    if not 1 <= m <= N:
        raise InvalidInputError(
            f"richness threshold m must lie in [1, {N}], got {m}",
            details={"source": "kakeya", "operation": "verify_kakeya", "m": m, "N": N},
        )
    check_budget("max_grid_points", settings.max_grid_points, N**n, source="kakeya", operation="verify_kakeya")
    directions = enumerate_projective(N, n)

    if witness is not None:
        lookup = _witness_lookup(points, witness)

        def check(direction: Direction) -> tuple[int, Line | None]:
            line = lookup.get(direction.rep)
            return (richness(points, line), line) if line is not None else (0, None)

    else:
        array = points_array(points.points, n)

        def check(direction: Direction) -> tuple[int, Line | None]:
            return richest_line(array, direction)

    results = parallel_map(check, directions)
    satisfied = [line for count, line in results if count >= m and line is not None]
    worst_index = min(range(len(results)), key=lambda i: results[i][0])
    report = VerificationReport(
        N=N,
        n=n,
        m=m,
        size=points.size,
        satisfied=len(satisfied),
        total=len(directions),
        epsilon=Fraction(len(satisfied), len(directions)),
        worst_direction=directions[worst_index].rep,
        worst_richness=results[worst_index][0],
        witnesses=KakeyaWitness(lines=tuple(satisfied)),
    )
    logger.info(
        "Verified point set",
        N=N,
        n=n,
        m=m,
        size=points.size,
        satisfied=report.satisfied,
        total=report.total,
        used_witness=witness is not None,
    )
    return report


def meets_epsilon(report: VerificationReport, epsilon: Fraction) -> bool:
    """At least an ε fraction: satisfied ≥ ⌈ε · total⌉, on exact rationals."""
    if not 0 <= epsilon <= 1:
        raise InvalidInputError(
            f"ε must lie in [0, 1], got {epsilon}",
            details={"source": "kakeya", "operation": "meets_epsilon", "epsilon": str(epsilon)},
        )
    return report.satisfied >= ceil_fraction(epsilon * report.total)


def is_m_eps_kakeya(points: PointSet, m: int, epsilon: Fraction) -> bool:
    return meets_epsilon(verify_kakeya(points, m), epsilon)


def is_kakeya(points: PointSet, witness: KakeyaWitness | None = None) -> bool:
    return verify_kakeya(points, points.N, witness).is_kakeya
