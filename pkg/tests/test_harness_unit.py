"""Scenario validation, check collection, byte-stable emission and golden comparison."""

from __future__ import annotations

import json

import pytest

from lib.errors import ConfigError, CutLocusError
from lib.harness import (
    CheckCollector,
    ScenarioConfig,
    Tolerances,
    compare_reports,
    emit_tables,
    load_config,
    load_report,
    run_suite,
)
from lib.harness.emit import canonical_json, format_float, report_csv
from lib.harness.models import validate_config


def _cheap_config(**extra) -> ScenarioConfig:
    return validate_config({"suite": "grassmann", "n": 2, "samples": 2, "seed": 7, **extra})


def test_scenario_defaults():
    cfg = validate_config({"suite": "geometry"})
    assert cfg.n == 2
    assert cfg.seed == 42
    assert cfg.geodesic.b == [0.3, 0.8, 1.2]
    assert cfg.tolerances.transport == 1e-7
    assert cfg.tolerances.unitarity == 1e-9
    assert cfg.quadrature_nodes is None


@pytest.mark.parametrize(
    "raw",
    [
        {"suite": "geometry", "colour": "blue"},
        {"suite": "no-such-suite"},
        {"suite": "boson-transport", "n": 3},
        {"suite": "fermion-transport", "family": "symplectic"},
        {"suite": "boson-flatness", "family": "euclidean"},
        {"suite": "geometry", "samples": 0},
        {"suite": "geometry", "tolerances": {"transport": -1.0}},
        {"suite": "boson-transport", "quadrature_nodes": 5},
        {"suite": "known-discrepancies"},
    ],
)
def test_invalid_scenarios_raise_config_error(raw):
    with pytest.raises(ConfigError):
        validate_config(raw)


def test_load_config_applies_overrides(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps({"suite": "symmetry", "n": 2, "seed": 1}))
    cfg = load_config(path, seed=9, n=None)
    assert cfg.seed == 9
    assert cfg.n == 2


def test_load_config_reports_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(broken)


def test_tolerance_scaling():
    doubled = Tolerances().scaled(2.0)
    assert doubled.transport == pytest.approx(2e-7)
    with pytest.raises(ConfigError):
        Tolerances().scaled(0.0)


def test_canonical_json_sorts_keys_and_fixes_floats():
    text = canonical_json({"b": 1.0, "a": [0.1, None, True]})
    assert text == '{\n  "a": [\n    0.10000000000000001,\n    null,\n    true\n  ],\n  "b": 1\n}'
    assert format_float(float("nan")) == "null"


def test_collector_statuses():
    checks = CheckCollector("unit", seed=0, tol_scale=2.0)
    assert checks.compare("a", "anchor", 1.0 + 1e-3, 1.0, 1e-3).passed
    assert not checks.bound("b", "anchor", 1.0, 0.1).passed
    checks.info("c", "anchor", 5.0, 1.0)
    assert checks.report.checks[0].tol == pytest.approx(2e-3)
    assert [c.id for c in checks.report.failures()] == ["b"]


def test_diagnostics_never_fail_a_report():
    checks = CheckCollector("unit", seed=0)
    checks.info("note", "anchor", 3.0, 0.0)
    checks.exact("count", "anchor", 2, 2)
    assert checks.report.passed


def test_guard_records_lab_errors_as_plumbing():
    checks = CheckCollector("unit", seed=0)
    with checks.guard("guarded", "anchor"):
        raise CutLocusError("on the cut locus", det=0.0)
    record = checks.report.checks[0]
    assert record.provenance == "plumbing"
    assert not record.passed
    assert not checks.report.passed


def test_guard_does_not_swallow_programming_errors():
    checks = CheckCollector("unit", seed=0)
    with pytest.raises(KeyError), checks.guard("guarded", "anchor"):
        raise KeyError("missing")


def test_cheap_suite_passes_and_emits_stable_bytes(tmp_path):
    first = run_suite(_cheap_config())
    second = run_suite(_cheap_config())
    assert first.passed
    path_a = emit_tables(first, tmp_path / "a", ("json", "csv"))[0]
    path_b = emit_tables(second, tmp_path / "b", ("json", "csv"))[0]
    assert path_a.read_bytes() == path_b.read_bytes()
    assert json.loads(path_a.read_text())["timings"] == {}
    assert (path_a.parent / "timings.json").exists()
    csv_lines = (path_a.parent / "report.csv").read_text().splitlines()
    assert len(csv_lines) == len(first.checks) + 1
    assert csv_lines[0].startswith("id,anchor,measured")


def test_timings_embedded_on_request(tmp_path):
    report = run_suite(_cheap_config())
    path = emit_tables(report, tmp_path, include_timings=True)[0]
    assert "grassmann" in json.loads(path.read_text())["timings"]


def test_emit_rejects_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        emit_tables(run_suite(_cheap_config()), tmp_path, ("xml",))


def test_report_round_trips_through_json(tmp_path):
    report = run_suite(_cheap_config())
    path = emit_tables(report, tmp_path)[0]
    loaded = load_report(path)
    assert [c.id for c in loaded.checks] == [c.id for c in report.checks]
    assert report_csv(loaded) == report_csv(report)


def test_compare_reports_detects_drift():
    golden = run_suite(_cheap_config())
    assert compare_reports(golden, run_suite(_cheap_config())) == []
    current = golden.model_copy(deep=True)
    target = next(c for c in current.checks if c.id == "grassmann.gaussian-2x2")
    target.measured = 0.8
    target.passed = False
    current.checks = [c for c in current.checks if c.id != "grassmann.pfaffian-expansion"]
    reasons = {d.check_id: d.reason for d in compare_reports(golden, current)}
    assert reasons == {
        "grassmann.gaussian-2x2": "now fails",
        "grassmann.pfaffian-expansion": "missing",
    }


def test_quadrature_nodes_come_from_the_scenario():
    cfg = validate_config({"suite": "boson-transport", "quadrature_nodes": 60})
    assert cfg.quadrature_nodes == 60


def test_fermion_transport_suite_checks_unitarity_tightly():
    report = run_suite(validate_config({"suite": "fermion-transport", "geodesic": {"b": [0.3]}}))
    unitarity = [c for c in report.checks if c.id.startswith("fermion.unitarity.")]
    assert unitarity
    assert all(c.tol == pytest.approx(1e-9) and c.passed for c in unitarity)
    coherent = [c for c in report.checks if "coherent" in c.id or "two-mode" in c.id]
    assert coherent
    assert all(c.passed and c.provenance != "plumbing" for c in coherent)
    assert report.passed


def test_discrepancy_suite_passes_under_its_name():
    report = run_suite(validate_config({"suite": "paper-discrepancies"}))
    assert report.passed
    assert all(c.id.startswith("paper-discrepancies.") for c in report.checks)
