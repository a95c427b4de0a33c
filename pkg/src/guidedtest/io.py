"""Dataset (de)serialization: one JSON document, plus CSV ingestion for defect lists.

Dataset document, ``format_version`` 1::

    {
      "format_version": 1,
      "parts":        [{"id", "name", "kind", "loc", "inspected"}],
      "defects":      [{"id", "part_id", "severity", "odc_type", "phase",
                        "functional", "accepted", "description"}],
      "reading_logs": [{"inspector_id", "parts_read", "loc_read", "effort_minutes"}],
      "test_cases":   [{"id", "part_id", "effort_minutes", "addressed_types", "tester"}],
      "detections":   [{"defect_id", "part_id", "tester"}],
      "traceability": {"<code class id>": ["<functionality id>", ...]}
    }

``odc_type`` is ``"checking"`` or ``"other:<detail>"``.
"""

from __future__ import annotations

import csv
import io
import json
from importlib import resources
from pathlib import Path
from typing import Any

from .errors import DatasetFormatError
from .model import (
    Dataset,
    DefectReport,
    Detection,
    OdcType,
    Part,
    PartKind,
    Phase,
    ReadingLog,
    Severity,
    TestCase,
)

FORMAT_VERSION = 1
DEFECT_CSV_COLUMNS = ("id", "part_id", "severity", "odc_type", "phase", "functional", "accepted", "description")


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _bool(value: Any, where: str) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in {"true", "1", "yes", "y"}:
        return True
    if text in {"false", "0", "no", "n", ""}:
        return False
    raise DatasetFormatError(f"{where}: not a boolean: {value!r}")


def _enum(cls, value: Any, where: str):
    try:
        return cls(value)
    except ValueError:
        allowed = ", ".join(m.value for m in cls)
        raise DatasetFormatError(f"{where}: {value!r} is not one of {allowed}") from None


def _odc(value: Any, where: str) -> OdcType:
    try:
        return OdcType.parse(value)
    except ValueError as exc:
        raise DatasetFormatError(f"{where}: bad odc_type {value!r} ({exc})") from None


def defect_from_dict(d: dict[str, Any], where: str = "defect") -> DefectReport:
    try:
        return DefectReport(
            id=str(d["id"]),
            part_id=str(d["part_id"]),
            severity=_enum(Severity, d["severity"], f"{where}.severity"),
            odc_type=_odc(d["odc_type"], f"{where}.odc_type"),
            phase=_enum(Phase, d["phase"], f"{where}.phase"),
            functional=_bool(d.get("functional", True), f"{where}.functional"),
            accepted=_bool(d.get("accepted", True), f"{where}.accepted"),
            description=str(d.get("description") or ""),
        )
    except KeyError as exc:
        raise DatasetFormatError(f"{where}: missing field {exc.args[0]!r}") from None


def defect_to_dict(d: DefectReport) -> dict[str, Any]:
    return {
        "id": d.id,
        "part_id": d.part_id,
        "severity": d.severity.value,
        "odc_type": str(d.odc_type),
        "phase": d.phase.value,
        "functional": d.functional,
        "accepted": d.accepted,
        "description": d.description,
    }


def dataset_from_dict(doc: dict[str, Any]) -> Dataset:
    if not isinstance(doc, dict):
        raise DatasetFormatError("dataset document must be a JSON object")
    version = doc.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DatasetFormatError(f"unsupported dataset format_version {version!r}")
    try:
        parts = tuple(
            Part(
                id=str(p["id"]),
                name=str(p.get("name", p["id"])),
                kind=_enum(PartKind, p["kind"], f"parts[{i}].kind"),
                loc=None if p.get("loc") is None else int(p["loc"]),
                inspected=_bool(p.get("inspected", False), f"parts[{i}].inspected"),
            )
            for i, p in enumerate(doc.get("parts", []))
        )
        defects = tuple(defect_from_dict(d, f"defects[{i}]") for i, d in enumerate(doc.get("defects", [])))
        logs = tuple(
            ReadingLog(
                inspector_id=str(r["inspector_id"]),
                parts_read=tuple(str(x) for x in r.get("parts_read", [])),
                loc_read=int(r["loc_read"]),
                effort_minutes=int(r["effort_minutes"]),
            )
            for r in doc.get("reading_logs", [])
        )
        cases = tuple(
            TestCase(
                id=str(t["id"]),
                part_id=str(t["part_id"]),
                effort_minutes=None if t.get("effort_minutes") is None else float(t["effort_minutes"]),
                addressed_types=frozenset(
                    _odc(x, f"test_cases[{i}].addressed_types") for x in t.get("addressed_types", [])
                ),
                tester=t.get("tester"),
            )
            for i, t in enumerate(doc.get("test_cases", []))
        )
        detections = tuple(
            Detection(defect_id=str(x["defect_id"]), part_id=str(x["part_id"]), tester=x.get("tester"))
            for x in doc.get("detections", [])
        )
    except KeyError as exc:
        raise DatasetFormatError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise DatasetFormatError(str(exc)) from None
    trace_doc = doc.get("traceability") or {}
    traceability = {
        str(k): (str(v),) if isinstance(v, str) else tuple(str(x) for x in v) for k, v in trace_doc.items()
    }
    return Dataset(parts, defects, logs, cases, detections, traceability)


def dataset_to_dict(ds: Dataset) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "parts": [
            {"id": p.id, "name": p.name, "kind": p.kind.value, "loc": p.loc, "inspected": p.inspected}
            for p in ds.parts
        ],
        "defects": [defect_to_dict(d) for d in ds.defects],
        "reading_logs": [
            {
                "inspector_id": r.inspector_id,
                "parts_read": list(r.parts_read),
                "loc_read": r.loc_read,
                "effort_minutes": r.effort_minutes,
            }
            for r in ds.reading_logs
        ],
        "test_cases": [
            {
                "id": t.id,
                "part_id": t.part_id,
                "effort_minutes": t.effort_minutes,
                "addressed_types": sorted(str(x) for x in t.addressed_types),
                "tester": t.tester,
            }
            for t in ds.test_cases
        ],
        "detections": [{"defect_id": x.defect_id, "part_id": x.part_id, "tester": x.tester} for x in ds.detections],
        "traceability": {k: list(v) for k, v in sorted(ds.traceability.items())},
    }


def load_dataset(path: str | Path) -> Dataset:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetFormatError(f"cannot read dataset {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return dataset_from_dict(doc)


def save_dataset(ds: Dataset, path: str | Path) -> None:
    Path(path).write_text(dumps(dataset_to_dict(ds)), encoding="utf-8")


def read_defects_csv(source: str | Path | io.TextIOBase) -> list[DefectReport]:
    """Read defect reports from CSV with the columns in ``DEFECT_CSV_COLUMNS``."""
    if isinstance(source, (str, Path)):
        with open(source, newline="", encoding="utf-8") as fh:
            return read_defects_csv(fh)
    reader = csv.DictReader(source)
    missing = [c for c in DEFECT_CSV_COLUMNS[:5] if c not in (reader.fieldnames or [])]
    if missing:
        raise DatasetFormatError(f"defect CSV lacks columns: {', '.join(missing)}")
    # header is line 1
    return [defect_from_dict(row, f"csv line {n}") for n, row in enumerate(reader, start=2)]


def write_defects_csv(defects, target: str | Path | io.TextIOBase) -> None:
    if isinstance(target, (str, Path)):
        with open(target, "w", newline="", encoding="utf-8") as fh:
            return write_defects_csv(defects, fh)
    writer = csv.DictWriter(target, fieldnames=DEFECT_CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for d in defects:
        writer.writerow(defect_to_dict(d))


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("guidedtest") / "data" / name))


def load_case_study() -> Dataset:
    """The bundled case-study fixture (12 inspected code classes, 8 system-test functionalities)."""
    return load_dataset(bundled_path("case_study.json"))
