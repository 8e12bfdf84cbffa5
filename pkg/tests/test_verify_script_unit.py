from __future__ import annotations

import json

from scripts import verify


def _run_cheap(out) -> int:
    return verify.main(["verify", "--suite", "grassmann", "--n", "2", "--out", str(out)])


def test_verify_passes_and_writes_report(tmp_path, capsys) -> None:
    assert _run_cheap(tmp_path) == verify.EXIT_PASS
    report = json.loads((tmp_path / "grassmann" / "report.json").read_text())
    assert report["suite"] == "grassmann"
    assert report["timings"] == {}
    assert "checks passed" in capsys.readouterr().out


def test_verify_reads_scenario_file(tmp_path) -> None:
    scenario = tmp_path / "scenario.json"
    scenario.write_text(json.dumps({"suite": "grassmann", "n": 1, "samples": 2}))
    code = verify.main(["verify", "--config", str(scenario), "--out", str(tmp_path / "out")])
    assert code == verify.EXIT_PASS
    assert (tmp_path / "out" / "grassmann" / "report.json").exists()


def test_config_errors_exit_with_two(tmp_path, capsys) -> None:
    out = str(tmp_path)
    assert verify.main(["verify", "--out", out]) == verify.EXIT_CONFIG
    assert verify.main(
        ["verify", "--suite", "boson-transport", "--n", "3", "--out", out]
    ) == verify.EXIT_CONFIG
    assert verify.main(
        ["verify", "--suite", "grassmann", "--tol-scale", "0", "--out", out]
    ) == verify.EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_table_re_emits_csv(tmp_path) -> None:
    _run_cheap(tmp_path)
    report = tmp_path / "grassmann" / "report.json"
    assert verify.main(["table", "--report", str(report)]) == verify.EXIT_PASS
    assert (tmp_path / "grassmann" / "report.csv").read_text().startswith("id,anchor")


def test_compare_exit_codes(tmp_path) -> None:
    _run_cheap(tmp_path)
    report = tmp_path / "grassmann" / "report.json"
    assert verify.main(
        ["compare", "--golden", str(report), "--report", str(report)]
    ) == verify.EXIT_PASS

    doc = json.loads(report.read_text())
    doc["checks"][0]["measured"] = 1e6
    drifted = tmp_path / "drifted.json"
    drifted.write_text(json.dumps(doc))
    assert verify.main(
        ["compare", "--golden", str(report), "--report", str(drifted)]
    ) == verify.EXIT_FAIL


def test_discrepancy_suite_exits_zero(tmp_path) -> None:
    code = verify.main(["verify", "--suite", "paper-discrepancies", "--out", str(tmp_path)])
    assert code == verify.EXIT_PASS
    assert (tmp_path / "paper-discrepancies" / "report.json").exists()
