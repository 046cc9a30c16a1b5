"""Projective directions and lines in (Z/NZ)^n."""

from pydantic import Field, model_validator

from .base import KznModel, Vector


class Direction(KznModel):
    """Canonical representative of a unit-multiple class of projective vectors.

    Instances are produced by ``canonicalize``; the model itself only checks
    that coordinates are least residues.
    """

    modulus: int = Field(ge=2)
    rep: Vector

    @model_validator(mode="after")
    def _check_rep(self) -> "Direction":
        if not self.rep:
            raise ValueError("a direction needs at least one coordinate")
        if any(not 0 <= x < self.modulus for x in self.rep):
            raise ValueError("direction coordinates must be least residues")
        return self

    @property
    def n(self) -> int:
        return len(self.rep)


class Line(KznModel):
    """The line {base + λ·direction : λ ∈ Z/NZ}."""

    base: Vector
    direction: Direction

    @model_validator(mode="after")
    def _check_base(self) -> "Line":
        if len(self.base) != self.direction.n:
            raise ValueError("base and direction dimensions differ")
        if any(not 0 <= x < self.direction.modulus for x in self.base):
            raise ValueError("base coordinates must be least residues")
        return self

    @property
    def modulus(self) -> int:
        return self.direction.modulus

    @property
    def n(self) -> int:
        return self.direction.n
