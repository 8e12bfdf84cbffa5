"""Byte-stable JSON/CSV emission of verification reports and golden-file comparison."""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Final

from lib.harness.report import CheckRecord, VerificationReport

logger = logging.getLogger(__name__)

CSV_FIELDS: Final = [
    "id",
    "anchor",
    "measured",
    "expected",
    "provenance",
    "tol",
    "pass",
    "diagnostic",
]


def format_float(value: float) -> str:
    """17 significant digits; non-finite values become null."""
    if not math.isfinite(value):
        return "null"
    return format(value, ".17g")


def canonical_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and fixed float formatting."""
    pad = " " * (indent * (_level + 1))
    close = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {canonical_json(obj[k], indent, _level + 1)}"
            for k in sorted(obj)
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, list | tuple):
        if not obj:
            return "[]"
        items = [f"{pad}{canonical_json(v, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    return json.dumps(str(obj))


def report_document(report: VerificationReport, include_timings: bool = False) -> dict[str, Any]:
    doc = report.model_dump(by_alias=True, mode="json")
    doc["checks"] = [c.model_dump(by_alias=True, mode="json") for c in report.checks]
    if not include_timings:
        doc["timings"] = {}
    return doc


def report_csv(report: VerificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for check in report.checks:
        row = check.model_dump(by_alias=True, mode="json")
        for key in ("measured", "expected", "tol"):
            row[key] = "" if row[key] is None else format_float(row[key])
        writer.writerow({k: row[k] for k in CSV_FIELDS})
    return buffer.getvalue()


def emit_tables(
    report: VerificationReport,
    out_dir: Path | str,
    formats: tuple[str, ...] = ("json",),
    include_timings: bool = False,
) -> list[Path]:
    """Write report.json and/or report.csv under out_dir/<suite>/; timings go to a side file."""
    target = Path(out_dir) / report.suite
    target.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for fmt in formats:
        if fmt == "json":
            path = target / "report.json"
            path.write_text(canonical_json(report_document(report, include_timings)) + "\n")
        elif fmt == "csv":
            path = target / "report.csv"
            path.write_text(report_csv(report))
        else:
            raise ValueError(f"unknown format {fmt!r}")
        written.append(path)
    timings = target / "timings.json"
    timings.write_text(canonical_json(report.timings) + "\n")
    logger.info("wrote %s", ", ".join(str(p) for p in written))
    return written


def load_report(path: Path | str) -> VerificationReport:
    return VerificationReport.model_validate_json(Path(path).read_text())


@dataclass(frozen=True)
class Drift:
    check_id: str
    golden: float | None
    current: float | None
    tol: float | None
    reason: str


def compare_reports(
    golden: VerificationReport, current: VerificationReport, tol_scale: float = 1.0
) -> list[Drift]:
    """Per-check drift of measured values beyond each golden check's tolerance."""
    current_by_id: dict[str, CheckRecord] = {c.id: c for c in current.checks}
    drifts: list[Drift] = []
    for check in golden.checks:
        other = current_by_id.get(check.id)
        if other is None:
            drifts.append(Drift(check.id, check.measured, None, check.tol, "missing"))
            continue
        if check.passed and not other.passed and not check.diagnostic:
            drifts.append(Drift(check.id, check.measured, other.measured, check.tol, "now fails"))
            continue
        if check.measured is None or other.measured is None:
            if check.measured != other.measured:
                drifts.append(Drift(check.id, check.measured, other.measured, check.tol, "value"))
            continue
        tol = (check.tol if check.tol is not None else 0.0) * tol_scale
        if abs(check.measured - other.measured) > tol:
            drifts.append(Drift(check.id, check.measured, other.measured, tol, "drift"))
    for drift in drifts:
        logger.warning(
            "drift %s: %s (golden %s, current %s)",
            drift.check_id,
            drift.reason,
            drift.golden,
            drift.current,
        )
    return drifts
