"""Rotations, lifted direction sets and rank reports."""

from pydantic import Field, model_validator
from sympy import Matrix

from .base import KznModel, Rational, Vector
from .geometry import Direction


class RotationMatrix(KznModel):
    """An element W of GL_n(Z/p^kZ)."""

    p: int = Field(ge=2)
    k: int = Field(ge=1)
    entries: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_invertible(self) -> "RotationMatrix":
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise ValueError("a rotation must be a non-empty square matrix")
        if any(not 0 <= x < self.modulus for row in self.entries for x in row):
            raise ValueError("rotation entries must be least residues mod p^k")
        if int(Matrix(self.entries).det()) % self.p == 0:
            raise ValueError("rotation determinant must be a unit mod p^k")
        return self

    @property
    def modulus(self) -> int:
        return self.p**self.k

    @property
    def n(self) -> int:
        return len(self.entries)

    def apply(self, u: Vector) -> Vector:
        """W·u mod p^k."""
        q = self.modulus
        return tuple(sum(w * x for w, x in zip(row, u, strict=True)) % q for row in self.entries)

    @classmethod
    def identity(cls, p: int, k: int, n: int) -> "RotationMatrix":
        return cls(p=p, k=k, entries=tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


class LiftedDirectionSet(KznModel):
    """D' = {u mod p^ℓ : u mod p^k ∈ D}."""

    p: int
    k: int
    ell: int
    n: int
    base: tuple[Direction, ...]
    lifted: tuple[Vector, ...]

    @model_validator(mode="after")
    def _check_count(self) -> "LiftedDirectionSet":
        expected = len(self.base) * self.p ** ((self.ell - self.k) * self.n)
        if len(self.lifted) != expected:
            raise ValueError(f"expected {expected} lifts, got {len(self.lifted)}")
        return self


class RestrictedRankReport(KznModel):
    p: int
    ell: int
    n: int
    full_rank: int
    restricted_rank: int
    restricted_rows: int

    @property
    def equal(self) -> bool:
        return self.full_rank == self.restricted_rank


class RankChainRow(KznModel):
    """One parameter point of a rank sweep: rank ≥ diagonal count ≥ binomial bound."""

    p: int
    ell: int
    n: int
    rank: int
    diag_bound: int
    binom_bound: int
    binom_certified: bool

    @property
    def chain_holds(self) -> bool:
        if self.rank < self.diag_bound:
            return False
        return not self.binom_certified or self.diag_bound >= self.binom_bound


class RotationSearchResult(KznModel):
    rotation: RotationMatrix
    rank: int
    exhaustive: bool
    candidates_checked: int
    epsilon: Rational
    bound: int
    bound_certified: bool

    @property
    def meets_bound(self) -> bool:
        return self.rank >= self.bound


class RichLineReport(KznModel):
    """Both sides of |S|·C(⌈p^ℓ/m⌉ + n − 1, n) ≥ rank M(D')."""

    p: int
    k: int
    ell: int
    n: int
    m: int
    size: int
    directions: int
    lhs: int
    rhs: int
    certified_size_bound: int
    problems: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.problems and self.lhs >= self.rhs
