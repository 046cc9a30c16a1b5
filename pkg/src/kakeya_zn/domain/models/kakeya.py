"""Point sets, witness maps, c-sequences and verification reports."""

from typing import Literal

from pydantic import Field, model_validator

from .base import KznModel, Rational, Vector
from .geometry import Direction, Line


class PointSet(KznModel):
    """A subset of (Z/NZ)^n."""

    N: int = Field(ge=2)
    n: int = Field(ge=1)
    points: frozenset[Vector]

    @model_validator(mode="after")
    def _check_points(self) -> "PointSet":
        for point in self.points:
            if len(point) != self.n:
                raise ValueError(f"point {point} does not have {self.n} coordinates")
            if any(not 0 <= x < self.N for x in point):
                raise ValueError(f"point {point} has a coordinate outside [0, {self.N})")
        return self

    @property
    def size(self) -> int:
        return len(self.points)

    def sorted_points(self) -> list[Vector]:
        return sorted(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self.points


class KakeyaWitness(KznModel):
    """One witnessing line per direction, ordered by direction representative."""

    lines: tuple[Line, ...] = ()

    @model_validator(mode="after")
    def _check_unique(self) -> "KakeyaWitness":
        reps = [line.direction.rep for line in self.lines]
        if len(set(reps)) != len(reps):
            raise ValueError("a witness map holds at most one line per direction")
        return self

    def as_dict(self) -> dict[Vector, Line]:
        return {line.direction.rep: line for line in self.lines}

    def get(self, direction: Direction) -> Line | None:
        return self.as_dict().get(direction.rep)

    def __len__(self) -> int:
        return len(self.lines)


class CSequence(KznModel):
    """Digit weights c_0..c_{k-1} driving g(Σ a_j p^j) = Σ a_j c_j p^j."""

    p: int = Field(ge=2)
    s: int = Field(ge=0)
    values: tuple[int, ...]

    @property
    def k(self) -> int:
        return (self.p ** (self.s + 1) - 1) // (self.p - 1)

    @model_validator(mode="after")
    def _check_values(self) -> "CSequence":
        if len(self.values) != self.k:
            raise ValueError(f"c-sequence must have length k = {self.k}")
        if self.values[0] != self.p**self.s - 1:
            raise ValueError("c_0 must equal p^s - 1")
        if any(not 0 <= c < max(self.p**self.s, 1) for c in self.values):
            raise ValueError("c-sequence values must lie in [0, p^s)")
        first_zero = self.values.index(0) if 0 in self.values else self.k
        if any(c != 0 for c in self.values[first_zero:]):
            raise ValueError("once 0 is reached every later value must be 0")
        return self


class CSequenceAudit(KznModel):
    p: int
    s: int
    length_matches: bool
    zero_count: int
    congruence_chain_holds: bool
    multiplicity_holds: bool

    @property
    def passed(self) -> bool:
        return self.length_matches and self.zero_count == self.s + 1 and self.congruence_chain_holds and self.multiplicity_holds


class GImageReport(KznModel):
    """Slice-image sizes of u ↦ t·u − g(u) over Z/p^kZ."""

    p: int
    s: int
    k: int
    mode: Literal["exhaustive", "sampled"]
    t_checked: int
    max_image: int
    argmax_t: int
    bound: Rational
    bound_floor: int
    sharp_bound: int

    @property
    def passed(self) -> bool:
        return self.max_image <= self.bound_floor

    @property
    def sharp_passed(self) -> bool:
        return self.max_image <= self.sharp_bound


class VerificationReport(KznModel):
    """Outcome of checking a point set for m-rich lines in every direction."""

    N: int
    n: int
    m: int
    size: int
    satisfied: int
    total: int
    epsilon: Rational
    worst_direction: Vector | None
    worst_richness: int
    witnesses: KakeyaWitness

    @property
    def is_kakeya(self) -> bool:
        """A full Kakeya set: every direction has a line contained in S."""
        return self.m == self.N and self.satisfied == self.total


class KakeyaConstruction(KznModel):
    """A constructed point set together with the witnesses that certify it."""

    points: PointSet
    witness: KakeyaWitness
    unit_first_size: int | None = None
    spec: tuple[tuple[int, int], ...] = ()
