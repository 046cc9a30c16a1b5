"""Baselines: exact minimum Kakeya sets by exhaustive search and a greedy builder."""

import random
from itertools import product

from kakeya_zn.core.config import settings
from kakeya_zn.core.constants import GREEDY_DEFAULT_SEED
from kakeya_zn.core.errors import check_budget
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import KakeyaConstruction, KakeyaWitness, Line, PointSet, Vector

from .geometry import direction_lines, enumerate_projective, line_points

logger = get_logger(__name__)


def _grid(N: int, n: int) -> list[Vector]:
    return list(product(range(N), repeat=n))


def min_kakeya_bruteforce(N: int, n: int) -> tuple[int, PointSet]:
    """Exact minimum size of a Kakeya set in (Z/NZ)^n, with the lexicographically first optimum.

    Sizes are tried in increasing order starting at N, since a Kakeya set
    contains a whole line. For each size a depth-first search adds points in
    index order, so the first hit is the lexicographically first subset. A
    branch is cut as soon as some direction has no line that the remaining
    points can still complete, or every completable line needs more points
    than are left. Points and lines are bitmasks.
    """
    check_budget(
        "bruteforce_grid_limit", settings.bruteforce_grid_limit, N**n, source="kakeya", operation="min_kakeya_bruteforce"
    )
    grid = _grid(N, n)
    index = {x: i for i, x in enumerate(grid)}
    line_masks = [
        [sum(1 << index[x] for x in set(line_points(line))) for line in direction_lines(direction)]
        for direction in enumerate_projective(N, n)
    ]

    total = len(grid)
    full = (1 << total) - 1

    def extend(mask: int, start: int, need: int) -> int | None:
        available = mask | (full & ~((1 << start) - 1))
        for lines in line_masks:
            completable = [(line & ~mask).bit_count() for line in lines if line & available == line]
            if not completable or min(completable) > need:
                return None
        if need == 0:
            return mask
        for i in range(start, total - need + 1):
            found = extend(mask | (1 << i), i + 1, need - 1)
            if found is not None:
                return found
        return None

    for size in range(N, total + 1):
        found = extend(0, 0, size)
        if found is not None:
            points = PointSet(N=N, n=n, points=frozenset(x for i, x in enumerate(grid) if found >> i & 1))
            logger.info("Exhaustive search finished", N=N, n=n, minimum=size)
            return size, points
    return len(grid), PointSet(N=N, n=n, points=frozenset(grid))


def greedy_kakeya(N: int, n: int, seed: int = GREEDY_DEFAULT_SEED) -> KakeyaConstruction:
    """Visit directions in a seeded order and take, for each, the line sharing most points with the set so far."""
    check_budget("max_grid_points", settings.max_grid_points, N**n, source="kakeya", operation="greedy_kakeya")
    rng = random.Random(seed)
    directions = enumerate_projective(N, n)
    rng.shuffle(directions)
    chosen: set[Vector] = set()
    witness: list[Line] = []
    for direction in directions:
        scored = [(len(chosen.intersection(line_points(line))), line) for line in direction_lines(direction)]
        best = max(score for score, _ in scored)
        line = rng.choice([line for score, line in scored if score == best])
        chosen.update(line_points(line))
        witness.append(line)
    witness.sort(key=lambda line: line.direction.rep)
    construction = KakeyaConstruction(
        points=PointSet(N=N, n=n, points=frozenset(chosen)),
        witness=KakeyaWitness(lines=tuple(witness)),
    )
    logger.info("Greedy construction finished", N=N, n=n, seed=seed, size=construction.points.size)
    return construction
