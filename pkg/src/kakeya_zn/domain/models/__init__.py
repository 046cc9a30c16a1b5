"""Domain models for kakeya-zn.

Immutable pydantic values shared by the algebra, the services and the file formats.
"""

from .base import KznModel, Rational, Vector
from .decoding import DecodeReport, WeightFunction
from .geometry import Direction, Line
from .incidence import (
    LiftedDirectionSet,
    RankChainRow,
    RestrictedRankReport,
    RichLineReport,
    RotationMatrix,
    RotationSearchResult,
)
from .kakeya import (
    CSequence,
    CSequenceAudit,
    GImageReport,
    KakeyaConstruction,
    KakeyaWitness,
    PointSet,
    VerificationReport,
)
from .reports import (
    BoundReport,
    BoundRequest,
    BoundValue,
    BranchedBound,
    ConstructionRequest,
    RankSweep,
    RunDescription,
    RunReport,
)
from .residues import Factorization, ZmodElem

__all__ = [
    "BoundReport",
    "BoundRequest",
    "BoundValue",
    "BranchedBound",
    "CSequence",
    "CSequenceAudit",
    "ConstructionRequest",
    "DecodeReport",
    "Direction",
    "Factorization",
    "GImageReport",
    "KakeyaConstruction",
    "KakeyaWitness",
    "KznModel",
    "LiftedDirectionSet",
    "Line",
    "PointSet",
    "RankChainRow",
    "RankSweep",
    "Rational",
    "RestrictedRankReport",
    "RichLineReport",
    "RotationMatrix",
    "RotationSearchResult",
    "RunDescription",
    "RunReport",
    "Vector",
    "WeightFunction",
    "ZmodElem",
]
