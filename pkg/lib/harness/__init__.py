"""Scenario-driven verification runner: configs, suites, reports and emitters."""

from lib.harness.emit import compare_reports, emit_tables, load_report
from lib.harness.models import SUITE_NAMES, ScenarioConfig, Tolerances, load_config
from lib.harness.report import CheckCollector, CheckRecord, VerificationReport
from lib.harness.suites import SUITES, run_suite

__all__ = [
    "SUITES",
    "SUITE_NAMES",
    "CheckCollector",
    "CheckRecord",
    "ScenarioConfig",
    "Tolerances",
    "VerificationReport",
    "compare_reports",
    "emit_tables",
    "load_config",
    "load_report",
    "run_suite",
]
