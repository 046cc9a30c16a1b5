"""Run reports: constructions checked against bounds, rank sweeps and bound tables."""

from collections.abc import Sequence
from typing import Any, cast

from pydantic import JsonValue

from kakeya_zn.core.concurrency import parallel_map
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import (
    BoundRequest,
    ConstructionRequest,
    RankChainRow,
    RankSweep,
    RunDescription,
    RunReport,
)

from .bounds import bound_table
from .construction import construct_kakeya_N
from .incidence import rank_chain_row
from .verification import verify_kakeya

logger = get_logger(__name__)

Entry = dict[str, JsonValue]

REPORT_PARAMETERS = ("kind", "spec", "p", "N", "n", "ell", "m", "epsilon", "bound")
_HEADLINE = {"construction": "size", "rank": "rank"}


def construction_entry(request: ConstructionRequest) -> Entry:
    """Construct, verify at m = N through the witness lines, and compare with every bound."""
    construction = construct_kakeya_N(request.spec, request.n)
    points = construction.points
    verification = verify_kakeya(points, points.N, construction.witness)
    table = bound_table(points.N, points.n, measured_size=points.size)
    return {
        "kind": "construction",
        "spec": [list(pair) for pair in request.spec],
        "N": points.N,
        "n": points.n,
        "size": points.size,
        "unit_first_size": construction.unit_first_size,
        "satisfied": verification.satisfied,
        "total": verification.total,
        "epsilon": str(verification.epsilon),
        "lower_bounds_respected": table.lower_bounds_respected,
        "upper_bounds_met": dict(table.upper_bounds_met),
        "passed": verification.is_kakeya and bool(table.lower_bounds_respected),
    }


def _row_entry(row: RankChainRow) -> Entry:
    entry: Entry = {"kind": "rank", **row.model_dump(mode="json")}
    entry["passed"] = row.chain_holds
    return entry


def rank_sweep_entries(sweep: RankSweep) -> list[Entry]:
    """rank ≥ diag ≥ binom over ℓ ≤ max_ell and n ≤ max_n, sorted by (ℓ, n)."""
    points = [(ell, n) for ell in range(1, sweep.max_ell + 1) for n in range(1, sweep.max_n + 1)]
    rows = parallel_map(lambda point: rank_chain_row(sweep.p, point[0], point[1]), points)
    return [_row_entry(row) for row in rows]


def bounds_entry(request: BoundRequest) -> Entry:
    table = bound_table(request.N, request.n, request.m, request.epsilon)
    return {"kind": "bounds", **table.model_dump(mode="json", by_alias=True, exclude={"schema_id"}), "passed": True}


def build_run_report(description: RunDescription) -> RunReport:
    """Evaluate a run description in a fixed order; EMPTY when there is nothing to do."""
    if description.is_empty:
        logger.info("Run description is empty")
        return RunReport(status="EMPTY")
    entries: list[Entry] = []
    for request in sorted(description.constructions, key=lambda r: (r.spec, r.n)):
        entries.append(construction_entry(request))
    for sweep in sorted(description.rank_sweeps, key=lambda s: (s.p, s.max_ell, s.max_n)):
        entries.extend(rank_sweep_entries(sweep))
    for request in sorted(description.bounds, key=lambda r: (r.N, r.n)):
        entries.append(bounds_entry(request))
    status = "PASS" if all(entry["passed"] for entry in entries) else "FAIL"
    logger.info("Run report built", entries=len(entries), status=status)
    return RunReport(status=status, entries=tuple(entries))


def flatten_entry(entry: Entry) -> dict[str, Any]:
    """One CSV row: nested values become dotted columns, lists stay as their JSON text."""
    flat: dict[str, Any] = {}
    for key, value in entry.items():
        if isinstance(value, dict):
            for inner, inner_value in flatten_entry(value).items():
                flat[f"{key}.{inner}"] = inner_value
        else:
            flat[key] = value
    return flat


def csv_rows(entries: Sequence[Entry]) -> list[dict[str, Any]]:
    """Long-format rows ending in ``value``: one per construction or rank point, one per bound of a table."""
    rows: list[dict[str, Any]] = []
    for entry in entries:
        if entry["kind"] == "bounds":
            parameters = {key: entry.get(key) for key in ("N", "n", "m", "epsilon")}
            for bound in cast("list[dict[str, JsonValue]]", entry["bounds"]):
                rows.append(
                    {
                        "kind": "bounds",
                        **parameters,
                        "bound": bound["name"],
                        "bound_kind": bound["kind"],
                        "value": bound["value"],
                    }
                )
            continue
        flat = flatten_entry(entry)
        flat["value"] = flat.pop(_HEADLINE[str(entry["kind"])])
        rows.append(flat)
    return rows
