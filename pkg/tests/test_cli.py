"""The kzn command: one JSON document per run and exit codes 0 (pass), 2 (failed check) and 1 (errors)."""

import csv
import json
from pathlib import Path
from typing import Any

import pytest

from kakeya_zn.core.config import settings
from kakeya_zn.main import main


def run(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict[str, Any]]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def run_error(capsys: pytest.CaptureFixture[str], *argv: str) -> tuple[int, dict[str, Any]]:
    code = main(list(argv))
    lines = [line for line in capsys.readouterr().err.splitlines() if line.strip()]
    return code, json.loads(lines[-1])


def write(path: Path, document: dict[str, Any]) -> Path:
    path.write_text(json.dumps(document))
    return path


# Passing runs


def test_construct_prime_power(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "construct", "--p", "2", "--s", "1", "--n", "2")

    assert code == 0
    assert document["schema"] == "kzn/1"
    assert document["status"] == "PASS"
    assert document["k"] == 3
    assert document["satisfied"] == document["directions"] == 12
    assert document["size"] <= document["certified_bound"] == 64
    assert len(document["points"]) == document["size"]


def test_construct_writes_files_that_verify(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    points, witness = tmp_path / "points.json", tmp_path / "witness.json"

    code, document = run(
        capsys, "construct", "--spec", "2:0,3:0", "--n", "2", "--out", str(points), "--witness-out", str(witness)
    )

    assert code == 0
    assert document["N"] == 6
    assert "points" not in document

    code, document = run(capsys, "verify", "--input", str(points), "--witness", str(witness))

    assert code == 0
    assert document["satisfied"] == document["total"]
    assert document["required_epsilon"] == "1"


def test_rank_with_restriction(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "rank", "--p", "2", "--ell", "2", "--n", "1", "--restrict")

    assert code == 0
    assert (document["rank"], document["diag_bound"], document["binom_bound"]) == (4, 3, 3)
    assert document["restricted"]["equal"] is True


def test_rank_notes_uncertified_binomial_bound(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "rank", "--p", "3", "--ell", "1", "--n", "2")

    assert code == 0
    assert "not certified" in document["note"]


def test_bounds(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "bounds", "--N", "12", "--n", "2")

    assert code == 0
    assert document["factors"] == [[2, 2], [3, 1]]
    assert {b["name"]: b["value"] for b in document["bounds"]}["lb_general"] == "1/4"


def test_decode_check(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "decode-check", "--p", "2", "--k", "1", "--ell", "2", "--n", "1", "--seed", "3")

    assert code == 0
    assert document["failures"] == []
    assert document["checks"] > 0


def test_search_min(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "search-min", "--N", "3", "--n", "2")

    assert code == 0
    assert document["minimum"] == 7
    assert len(document["points"]) == 7


# Failed checks


def test_verify_fails_below_the_required_fraction(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = write(tmp_path / "line.json", {"N": 3, "n": 2, "points": [[0, 0], [1, 0], [2, 0]]})

    code, document = run(capsys, "verify", "--input", str(path), "--eps", "1/2")
    assert code == 2
    assert document["status"] == "FAIL"
    assert document["epsilon"] == "1/4"

    code, document = run(capsys, "verify", "--input", str(path), "--m", "3", "--eps", "1/4")
    assert code == 0


def test_bounds_flag_an_impossible_size(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "bounds", "--N", "9", "--n", "2", "--size", "1")

    assert code == 2
    assert document["lower_bounds_respected"] is False


def test_bounds_accept_a_small_partial_set(capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run(capsys, "bounds", "--N", "4", "--n", "1", "--m", "1", "--eps", "1", "--size", "1")

    assert code == 0
    assert document["lower_bounds_respected"] is True


# Errors


@pytest.mark.parametrize(
    "argv,error_code",
    [
        (("construct", "--p", "2", "--n", "2"), 1001),
        (("construct", "--spec", "2:0,2:1", "--n", "2"), 1001),
        (("search-min", "--N", "5", "--n", "2"), 4001),
        (("rank", "--p", "2", "--ell", "4", "--n", "4"), 4001),
    ],
)
def test_errors_exit_with_one(argv: tuple[str, ...], error_code: int, capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run_error(capsys, *argv)

    assert code == 1
    assert document["status"] == "ERROR"
    assert document["error_code"] == error_code


def test_missing_input_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    code, document = run_error(capsys, "verify", "--input", str(tmp_path / "absent.json"))

    assert code == 1
    assert document["error_code"] == 5002
    assert "details" not in document


def test_malformed_input_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = write(tmp_path / "points.json", {"N": 3, "n": 2, "points": [[0.5, 0]]})

    code, document = run_error(capsys, "verify", "--input", str(path))

    assert code == 1
    assert document["error_code"] == 5001
    assert document["details"]["operation"] == "load_point_set"


def test_contradictory_configuration(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setattr(settings, "rank_row_budget", 10)

    code, document = run_error(capsys, "bounds", "--N", "4", "--n", "1")

    assert code == 1
    assert "KZN_RESTRICTED_RANK_BUDGET" in document["error"]


@pytest.mark.parametrize(
    "argv",
    [
        ("bounds", "--N", "x", "--n", "2"),
        ("bounds", "--N", "4", "--n", "2", "--eps", "0.5"),
        ("bounds", "--N", "4", "--n", "2", "--eps", "3/2"),
        ("construct", "--spec", "2-0", "--n", "2"),
        ("construct", "--p", "2", "--spec", "2:0", "--n", "2"),
        ("construct", "--p", "2", "--s", "1", "--n", "0"),
        ("construct", "--spec", "2:0,3:0", "--s", "1", "--n", "2"),
        (),
    ],
)
def test_usage_errors_exit_with_one(argv: tuple[str, ...]) -> None:
    with pytest.raises(SystemExit) as exc_info:
        main(list(argv))

    assert exc_info.value.code == 1


# Reports


def test_empty_report(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    json_out, csv_out = tmp_path / "report.json", tmp_path / "report.csv"

    code, document = run(capsys, "report", "--out", str(json_out))
    assert code == 0
    assert document["entries"] == 0
    assert json.loads(json_out.read_text()) == {"schema": "kzn/1", "status": "EMPTY", "entries": []}

    code, _ = run(capsys, "report", "--out", str(csv_out), "--format", "csv")
    assert code == 0
    assert list(csv.reader(csv_out.read_text().splitlines())) == [[]]


def test_full_report(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    description = write(
        tmp_path / "run.json",
        {
            "constructions": [{"spec": [[2, 1]], "n": 2}],
            "rank_sweeps": [{"p": 2, "max_ell": 2, "max_n": 1}],
            "bounds": [{"N": 12, "n": 2, "epsilon": "1/2"}],
        },
    )
    json_out, csv_out = tmp_path / "report.json", tmp_path / "report.csv"

    code, document = run(capsys, "report", "--run", str(description), "--out", str(json_out))
    assert code == 0
    assert document["entries"] == 4

    report = json.loads(json_out.read_text())
    assert report["status"] == "PASS"
    assert [entry["kind"] for entry in report["entries"]] == ["construction", "rank", "rank", "bounds"]

    code, _ = run(capsys, "report", "--run", str(description), "--out", str(csv_out), "--format", "csv")
    rows = list(csv.DictReader(csv_out.read_text().splitlines()))
    assert code == 0
    header = csv_out.read_text().splitlines()[0]
    assert header.startswith("kind,spec,p,N,n,ell,m,epsilon,bound,")
    assert header.endswith(",value")
    assert [row["kind"] for row in rows] == ["construction", "rank", "rank", "bounds", "bounds"]
    assert rows[0]["upper_bounds_met.ub_certified"] == "true"
    assert [row["value"] for row in rows[1:3]] == ["2", "4"]
    assert [(row["bound"], row["value"]) for row in rows[3:]] == [("lb_general", "1/4"), ("lb_general.general", "1/4")]
