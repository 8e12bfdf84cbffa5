#!/usr/bin/env python3
# ruff: noqa: E402

"""Run verification suites and emit reports.

Subcommands:
  verify   run one suite from flags or a JSON scenario config
  table    re-emit an existing report.json as JSON and/or CSV
  compare  compare a report against a golden report

Exit codes: 0 pass, 1 check failure or drift, 2 config error, 3 internal error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

_REPO_ROOT = os.path.dirname(os.path.dirname(__file__))
if _REPO_ROOT not in sys.path:
    sys.path.insert(0, _REPO_ROOT)

from lib.errors import ConfigError
from lib.harness import (
    SUITE_NAMES,
    compare_reports,
    emit_tables,
    load_config,
    load_report,
    run_suite,
)
from lib.harness.models import validate_config
from lib.utils.config import config

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_INTERNAL = 3

logger = logging.getLogger("verify")


def _formats(value: str) -> tuple[str, ...]:
    return ("json", "csv") if value == "both" else (value,)


def _verify(args: argparse.Namespace) -> int:
    overrides = {"suite": args.suite, "seed": args.seed, "n": args.n}
    if args.config:
        cfg = load_config(args.config, **overrides)
    else:
        if not args.suite:
            raise ConfigError("either --suite or --config is required")
        cfg = validate_config({k: v for k, v in overrides.items() if v is not None})
    report = run_suite(cfg, tol_scale=args.tol_scale)
    out_dir = args.out or cfg.out or config.paths.output_dir
    paths = emit_tables(report, out_dir, _formats(args.format), include_timings=args.timings)
    for check in report.failures():
        print(f"FAIL {check.id}: measured={check.measured} expected={check.expected} "
              f"tol={check.tol}")
    status = "passed" if report.passed else "FAILED"
    print(f"{report.suite}: {len(report.checks)} checks {status}; wrote {paths[0].parent}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _table(args: argparse.Namespace) -> int:
    report = load_report(args.report)
    out_dir = args.out or Path(args.report).parent.parent
    emit_tables(report, out_dir, _formats(args.format))
    return EXIT_PASS


def _compare(args: argparse.Namespace) -> int:
    golden = load_report(args.golden)
    current = load_report(args.report)
    drifts = compare_reports(golden, current, tol_scale=args.tol_scale)
    for drift in drifts:
        print(f"DRIFT {drift.check_id}: {drift.reason} golden={drift.golden} "
              f"current={drift.current} tol={drift.tol}")
    print(f"{len(drifts)} drifting checks")
    return EXIT_FAIL if drifts else EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Quantisation lab verification runner")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", choices=SUITE_NAMES, help="Suite name")
    verify.add_argument("--config", help="JSON scenario config")
    verify.add_argument("--seed", type=int, help="RNG seed (overrides the config)")
    verify.add_argument("--n", type=int, help="Dimension parameter (overrides the config)")
    verify.add_argument("--out", help="Output directory")
    verify.add_argument("--format", choices=["json", "csv", "both"], default="json")
    verify.add_argument("--tol-scale", type=float, default=1.0, help="Multiply every tolerance")
    verify.add_argument("--timings", action="store_true", help="Embed timings in report.json")
    verify.set_defaults(handler=_verify)

    table = sub.add_parser("table", help="Re-emit a report")
    table.add_argument("--report", required=True, help="Path to report.json")
    table.add_argument("--out", help="Output directory")
    table.add_argument("--format", choices=["json", "csv", "both"], default="csv")
    table.set_defaults(handler=_table)

    compare = sub.add_parser("compare", help="Compare a report with a golden report")
    compare.add_argument("--golden", required=True, help="Golden report.json")
    compare.add_argument("--report", required=True, help="Current report.json")
    compare.add_argument("--tol-scale", type=float, default=1.0)
    compare.set_defaults(handler=_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=config.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        if getattr(args, "tol_scale", 1.0) <= 0:
            raise ConfigError("--tol-scale must be positive")
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        logger.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
