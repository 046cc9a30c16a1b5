"""Bound reports and run documents."""

from fractions import Fraction
from typing import Literal

from pydantic import ConfigDict, Field, JsonValue

from kakeya_zn.core.constants import SCHEMA_VERSION

from .base import KznModel, Rational


class BranchedBound(KznModel):
    """A lower bound with a general branch and, when it applies, a sharper one."""

    general: Rational
    sharper: Rational | None = None

    @property
    def value(self) -> Fraction:
        return self.general if self.sharper is None else max(self.general, self.sharper)


class BoundValue(KznModel):
    """One closed-form bound, exact."""

    name: str
    kind: Literal["lower", "upper"]
    value: Rational
    display: str
    note: str = ""


class BoundReport(KznModel):
    schema_id: str = Field(default=SCHEMA_VERSION, alias="schema", serialization_alias="schema")
    N: int
    factors: tuple[tuple[int, int], ...]
    n: int
    m: int | None = None
    epsilon: Rational | None = None
    recommended_ell: int | None = None
    bounds: tuple[BoundValue, ...] = ()
    measured_size: int | None = None
    lower_bounds_respected: bool | None = None
    upper_bounds_met: dict[str, bool] = Field(default_factory=dict)
    notes: tuple[str, ...] = ()

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class RunReport(KznModel):
    """Aggregated, deterministic document written by the report subcommand."""

    schema_id: str = Field(default=SCHEMA_VERSION, alias="schema", serialization_alias="schema")
    status: Literal["PASS", "FAIL", "EMPTY"] = "EMPTY"
    entries: tuple[dict[str, JsonValue], ...] = ()

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


class ConstructionRequest(KznModel):
    """Build the Kakeya set for N = Π p_i^{k_i} given as (p_i, s_i) pairs."""

    spec: tuple[tuple[int, int], ...] = Field(min_length=1)
    n: int = Field(ge=1)


class RankSweep(KznModel):
    p: int = Field(ge=2)
    max_ell: int = Field(ge=1)
    max_n: int = Field(ge=1)


class BoundRequest(KznModel):
    N: int = Field(ge=2)
    n: int = Field(ge=1)
    m: int | None = None
    epsilon: Rational | None = None


class RunDescription(KznModel):
    """What the report subcommand should compute; an empty description yields an empty report."""

    constructions: tuple[ConstructionRequest, ...] = ()
    rank_sweeps: tuple[RankSweep, ...] = ()
    bounds: tuple[BoundRequest, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not (self.constructions or self.rank_sweeps or self.bounds)
