"""kzn/1 documents on disk: point sets, witness maps, reports and CSV tables.

Inputs hold decimal integers only. Every write goes to a private temporary
file first and is published with an atomic rename.
"""

import csv
import io
import json
import os
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, StrictInt, ValidationError

from kakeya_zn.core.errors import FileFormatError
from kakeya_zn.core.logging import get_logger
from kakeya_zn.domain.models import Direction, KakeyaWitness, Line, PointSet, RunDescription

logger = get_logger(__name__)


class _PointSetDocument(BaseModel):
    N: StrictInt = Field(ge=2)
    n: StrictInt = Field(ge=1)
    points: list[list[StrictInt]]

    model_config = ConfigDict(extra="ignore")


class _WitnessLine(BaseModel):
    direction: list[StrictInt] = Field(alias="dir", min_length=1)
    base: list[StrictInt] = Field(min_length=1)


class _WitnessDocument(BaseModel):
    witnesses: list[_WitnessLine]

    model_config = ConfigDict(extra="ignore")


def _read_json(path: Path, operation: str) -> object:
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(
            f"{path} is not valid JSON: {e.msg}",
            details={"source": "files", "operation": operation, "path": str(path), "line": e.lineno},
        ) from e


def _format_error(path: Path, operation: str, error: ValidationError) -> FileFormatError:
    return FileFormatError(
        f"{path} does not match the kzn/1 format: {error}",
        details={"source": "files", "operation": operation, "path": str(path)},
    )


def parse_point_set(raw: object, path: Path = Path("<memory>")) -> PointSet:
    try:
        document = _PointSetDocument.model_validate(raw)
    except ValidationError as e:
        raise _format_error(path, "load_point_set", e) from e
    points = [tuple(point) for point in document.points]
    if len(set(points)) != len(points):
        duplicates = sorted({p for p in points if points.count(p) > 1})
        raise FileFormatError(
            f"{path} lists {len(points) - len(set(points))} duplicate points",
            details={"source": "files", "operation": "load_point_set", "duplicates": [list(p) for p in duplicates[:5]]},
        )
    try:
        return PointSet(N=document.N, n=document.n, points=frozenset(points))
    except ValidationError as e:
        raise _format_error(path, "load_point_set", e) from e


def load_point_set(path: Path) -> PointSet:
    """Read {"N", "n", "points"}; duplicates and out-of-range coordinates are rejected."""
    points = parse_point_set(_read_json(path, "load_point_set"), path)
    logger.info("Loaded point set", path=str(path), N=points.N, n=points.n, size=points.size)
    return points


def point_set_document(points: PointSet) -> dict[str, Any]:
    return {"N": points.N, "n": points.n, "points": [list(point) for point in points.sorted_points()]}


def load_witness(path: Path, N: int) -> KakeyaWitness:
    """Read {"witnesses": [{"dir", "base"}]} for the grid (Z/NZ)^n."""
    try:
        document = _WitnessDocument.model_validate(_read_json(path, "load_witness"))
        lines = [
            Line(
                base=tuple(x % N for x in item.base),
                direction=Direction(modulus=N, rep=tuple(x % N for x in item.direction)),
            )
            for item in document.witnesses
        ]
        witness = KakeyaWitness(lines=tuple(sorted(lines, key=lambda line: line.direction.rep)))
    except ValidationError as e:
        raise _format_error(path, "load_witness", e) from e
    logger.info("Loaded witness map", path=str(path), N=N, lines=len(witness))
    return witness


def witness_document(witness: KakeyaWitness) -> dict[str, Any]:
    return {
        "witnesses": [
            {"dir": list(line.direction.rep), "base": list(line.base)}
            for line in sorted(witness.lines, key=lambda line: line.direction.rep)
        ]
    }


def load_run_description(path: Path) -> RunDescription:
    try:
        return RunDescription.model_validate(_read_json(path, "load_run_description"))
    except ValidationError as e:
        raise _format_error(path, "load_run_description", e) from e


def write_atomic(path: Path, payload: str) -> None:
    """Write the whole payload to an owner-only temporary file, then atomically publish it."""
    path.parent.mkdir(parents=True, exist_ok=True)
    temporary_path = path.with_suffix(f"{path.suffix}.tmp-{os.getpid()}")
    descriptor = os.open(temporary_path, os.O_WRONLY | os.O_CREAT | os.O_EXCL, 0o600)
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(temporary_path, path)
    finally:
        temporary_path.unlink(missing_ok=True)
    logger.info("Wrote file", path=str(path), bytes=len(payload.encode("utf-8")))


def dumps_json(document: Mapping[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def write_json(path: Path, document: Mapping[str, Any]) -> None:
    write_atomic(path, dumps_json(document))


def _cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list | dict):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def dumps_csv(
    rows: Sequence[Mapping[str, object]], leading: Sequence[str] = (), trailing: Sequence[str] = ()
) -> str:
    """Header row first; columns are ``leading``, the remaining keys sorted, then ``trailing``."""
    keys = {key for row in rows for key in row}
    pinned = set(leading) | set(trailing)
    header = (
        [key for key in leading if key in keys] + sorted(keys - pinned) + [key for key in trailing if key in keys]
    )
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(row.get(key)) for key in header])
    return buffer.getvalue()


def write_csv(
    path: Path, rows: Sequence[Mapping[str, object]], leading: Sequence[str] = (), trailing: Sequence[str] = ()
) -> None:
    write_atomic(path, dumps_csv(rows, leading, trailing))
