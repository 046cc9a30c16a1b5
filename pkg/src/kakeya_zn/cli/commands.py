"""Subcommand handlers. Each prints one kzn/1 JSON document on stdout and returns the exit code."""

import argparse
import sys
from typing import Any

from kakeya_zn.core.constants import EXIT_CHECK_FAILED, EXIT_PASS, SCHEMA_VERSION
from kakeya_zn.core.errors import InvalidInputError
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import RunDescription
from kakeya_zn.infrastructure import (
    dumps_json,
    load_point_set,
    load_run_description,
    load_witness,
    point_set_document,
    witness_document,
    write_csv,
    write_json,
)
from kakeya_zn.services.bounds import bound_table
from kakeya_zn.services.construction import (
    admissible_k,
    certified_size_bound,
    construct_kakeya_N,
    layered_sum_bound,
    unit_first_bound,
)
from kakeya_zn.services.decoding import decode_sweep
from kakeya_zn.services.incidence import rank_chain_row, verify_restricted_rank
from kakeya_zn.services.reporting import REPORT_PARAMETERS, build_run_report, csv_rows
from kakeya_zn.services.search import min_kakeya_bruteforce
from kakeya_zn.services.verification import meets_epsilon, verify_kakeya

logger = get_logger(__name__)


def _emit(command: str, status: str, body: dict[str, Any]) -> int:
    document = {"schema": SCHEMA_VERSION, "command": command, "status": status, **body}
    sys.stdout.write(dumps_json(document))
    return EXIT_PASS if status == "PASS" else EXIT_CHECK_FAILED


def _status(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def construct(args: argparse.Namespace) -> int:
    if args.p is not None:
        if args.s is None:
            raise InvalidInputError(
                "--p needs --s", details={"source": "cli", "operation": "construct", "p": args.p}
            )
        spec = [(args.p, args.s)]
    else:
        spec = args.spec
    construction = construct_kakeya_N(spec, args.n)
    points = construction.points
    verification = verify_kakeya(points, points.N, construction.witness)
    table = bound_table(points.N, points.n, measured_size=points.size)
    if args.out is not None:
        write_json(args.out, point_set_document(points))
    if args.witness_out is not None:
        write_json(args.witness_out, witness_document(construction.witness))

    body: dict[str, Any] = {
        "spec": [list(pair) for pair in construction.spec],
        "N": points.N,
        "n": points.n,
        "size": points.size,
        "unit_first_size": construction.unit_first_size,
        "directions": verification.total,
        "satisfied": verification.satisfied,
        "lower_bounds_respected": table.lower_bounds_respected,
        "upper_bounds_met": table.upper_bounds_met,
    }
    if len(spec) == 1:
        p, s = spec[0]
        body["k"] = admissible_k(p, s)
        body["unit_first_bound"] = unit_first_bound(p, s, args.n)
        body["certified_bound"] = certified_size_bound(p, s, args.n)
        body["sum_bound"] = str(layered_sum_bound(p, s, args.n))
    if args.out is None:
        body["points"] = point_set_document(points)["points"]
    return _emit("construct", _status(verification.is_kakeya and bool(table.lower_bounds_respected)), body)


def verify(args: argparse.Namespace) -> int:
    points = load_point_set(args.input)
    m = points.N if args.m is None else args.m
    witness = load_witness(args.witness, points.N) if args.witness is not None else None
    report = verify_kakeya(points, m, witness)
    passed = meets_epsilon(report, args.eps)
    body = report.model_dump(mode="json", exclude={"witnesses"})
    body["required_epsilon"] = str(args.eps)
    body["witnesses"] = witness_document(report.witnesses)["witnesses"]
    return _emit("verify", _status(passed), body)


def rank(args: argparse.Namespace) -> int:
    row = rank_chain_row(args.p, args.ell, args.n)
    body: dict[str, Any] = {**row.model_dump(mode="json"), "chain_holds": row.chain_holds}
    passed = row.chain_holds
    if not row.binom_certified:
        body["note"] = "the binomial bound is reported but not certified at ell = 1"
    if args.restrict:
        restricted = verify_restricted_rank(args.p, args.ell, args.n)
        body["restricted"] = {**restricted.model_dump(mode="json"), "equal": restricted.equal}
        passed = passed and restricted.equal
    return _emit("rank", _status(passed), body)


def bounds(args: argparse.Namespace) -> int:
    report = bound_table(args.N, args.n, args.m, args.eps, measured_size=args.size)
    body = report.model_dump(mode="json", by_alias=True, exclude={"schema_id"})
    return _emit("bounds", _status(report.lower_bounds_respected is not False), body)


def decode_check(args: argparse.Namespace) -> int:
    reports = decode_sweep(args.p, args.k, args.ell, args.n, all_directions=args.all_directions, seed=args.seed)
    failures = [report.model_dump(mode="json") for report in reports if not report.passed]
    body = {
        "p": args.p,
        "k": args.k,
        "ell": args.ell,
        "n": args.n,
        "checks": len(reports),
        "exponents_checked": sum(report.exponents_checked for report in reports),
        "failures": failures,
    }
    return _emit("decode-check", _status(bool(reports) and not failures), body)


def search_min(args: argparse.Namespace) -> int:
    size, points = min_kakeya_bruteforce(args.N, args.n)
    table = bound_table(args.N, args.n, measured_size=size)
    body = {
        "N": args.N,
        "n": args.n,
        "minimum": size,
        "points": point_set_document(points)["points"],
        "lower_bounds_respected": table.lower_bounds_respected,
    }
    return _emit("search-min", _status(bool(table.lower_bounds_respected)), body)


def report(args: argparse.Namespace) -> int:
    description = load_run_description(args.run) if args.run is not None else RunDescription()
    run = build_run_report(description)
    if args.format == "json":
        write_json(args.out, run.model_dump(mode="json", by_alias=True))
    else:
        write_csv(args.out, csv_rows(run.entries), leading=REPORT_PARAMETERS, trailing=("value",))
    logger.info("Report written", path=str(args.out), format=args.format, status=run.status)
    status = "FAIL" if run.status == "FAIL" else "PASS"
    return _emit("report", status, {"out": str(args.out), "format": args.format, "entries": len(run.entries)})


HANDLERS = {
    "construct": construct,
    "verify": verify,
    "rank": rank,
    "bounds": bounds,
    "decode-check": decode_check,
    "search-min": search_min,
    "report": report,
}
