"""Check records, verification reports and the collector suites write into."""

from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from enum import StrEnum
from typing import Final

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from lib.errors import QuantLabError

logger = logging.getLogger(__name__)

REPORT_VERSION: Final = "1.0"


class CheckProvenance(StrEnum):
    DERIVED = "derived"
    CLOSED_FORM = "closed-form"
    TRIVIAL = "trivial"
    REGRESSION = "regression"
    INFORMATIONAL = "informational"
    PLUMBING = "plumbing"


class CheckRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    anchor: str
    measured: float | None
    expected: float | None
    provenance: str
    tol: float | None
    passed: bool = Field(alias="pass")
    diagnostic: bool = False


class VerificationReport(BaseModel):
    suite: str
    seed: int
    checks: list[CheckRecord] = Field(default_factory=list)
    timings: dict[str, float] = Field(default_factory=dict)
    version: str = REPORT_VERSION

    @property
    def passed(self) -> bool:
        """Conjunction over non-diagnostic checks."""
        return all(c.passed for c in self.checks if not c.diagnostic)

    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.diagnostic and not c.passed]


def _real(value: complex | float | None) -> float | None:
    if value is None:
        return None
    v = complex(value)
    return float(v.real) if v.imag == 0 else float(abs(v))


class CheckCollector:
    """Accumulates check records; tolerances are multiplied by ``tol_scale``."""

    def __init__(self, suite: str, seed: int, tol_scale: float = 1.0) -> None:
        self.report = VerificationReport(suite=suite, seed=seed)
        self.tol_scale = tol_scale

    def _add(self, record: CheckRecord) -> CheckRecord:
        self.report.checks.append(record)
        level = logging.WARNING if record.diagnostic or not record.passed else logging.INFO
        logger.log(
            level,
            "%s [%s] measured=%s expected=%s tol=%s pass=%s",
            record.id,
            record.anchor,
            record.measured,
            record.expected,
            record.tol,
            record.passed,
        )
        return record

    def compare(
        self,
        check_id: str,
        anchor: str,
        measured: complex | float,
        expected: complex | float,
        tol: float,
        provenance: str = CheckProvenance.DERIVED,
    ) -> CheckRecord:
        """Pass when |measured - expected| <= tol."""
        limit = tol * self.tol_scale
        deviation = abs(complex(measured) - complex(expected))
        ok = bool(np.isfinite(deviation) and deviation <= limit)
        return self._add(
            CheckRecord(
                id=check_id,
                anchor=anchor,
                measured=_real(measured),
                expected=_real(expected),
                provenance=provenance,
                tol=limit,
                passed=ok,
            )
        )

    def bound(
        self,
        check_id: str,
        anchor: str,
        residual: float,
        tol: float,
        provenance: str = CheckProvenance.DERIVED,
    ) -> CheckRecord:
        """Pass when a residual is at most tol."""
        return self.compare(check_id, anchor, residual, 0.0, tol, provenance)

    def exact(
        self,
        check_id: str,
        anchor: str,
        measured: float | int,
        expected: float | int,
        provenance: str = CheckProvenance.DERIVED,
    ) -> CheckRecord:
        return self._add(
            CheckRecord(
                id=check_id,
                anchor=anchor,
                measured=float(measured),
                expected=float(expected),
                provenance=provenance,
                tol=0.0,
                passed=measured == expected,
            )
        )

    def flag(
        self,
        check_id: str,
        anchor: str,
        condition: bool,
        provenance: str = CheckProvenance.DERIVED,
    ) -> CheckRecord:
        return self.exact(check_id, anchor, int(bool(condition)), 1, provenance)

    def info(
        self,
        check_id: str,
        anchor: str,
        measured: complex | float | None,
        expected: complex | float | None = None,
    ) -> CheckRecord:
        """A diagnostic record; never affects the overall status."""
        return self._add(
            CheckRecord(
                id=check_id,
                anchor=anchor,
                measured=_real(measured),
                expected=_real(expected),
                provenance=CheckProvenance.INFORMATIONAL,
                tol=None,
                passed=True,
                diagnostic=True,
            )
        )

    @contextmanager
    def guard(self, check_id: str, anchor: str) -> Iterator[None]:
        """Record a failed check instead of propagating a lab or linear-algebra error."""
        try:
            yield
        except (QuantLabError, np.linalg.LinAlgError, ValueError) as exc:
            logger.error("%s raised %s: %s", check_id, type(exc).__name__, exc)
            self._add(
                CheckRecord(
                    id=check_id,
                    anchor=anchor,
                    measured=None,
                    expected=None,
                    provenance=CheckProvenance.PLUMBING,
                    tol=None,
                    passed=False,
                )
            )

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.report.timings[label] = time.perf_counter() - start
