from __future__ import annotations

import os

import numpy as np
import pytest

from lib.fermion.context import FermionContext
from lib.geometry.phase_space import Family, LinearPhaseSpace


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--slow",
        action="store_true",
        default=False,
        help="Run slow tests (ODE transport, quadrature, holonomy surfaces)",
    )


def pytest_configure(config: pytest.Config) -> None:
    config.addinivalue_line(
        "markers",
        "slow: long-running numerical checks (ODE integration, quadrature, curvature surfaces)",
    )


def _slow_enabled(config: pytest.Config) -> bool:
    if config.getoption("--slow"):
        return True
    return os.getenv("RUN_SLOW") in {"1", "true", "TRUE", "yes", "YES"}


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if _slow_enabled(config):
        return

    skip_marker = pytest.mark.skip(reason="slow tests disabled (use --slow or RUN_SLOW=1)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_marker)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so numerical tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def euclidean2() -> LinearPhaseSpace:
    return LinearPhaseSpace.standard(2, Family.EUCLIDEAN)


@pytest.fixture
def symplectic1() -> LinearPhaseSpace:
    return LinearPhaseSpace.standard(1, Family.SYMPLECTIC)


@pytest.fixture
def fermion2() -> FermionContext:
    """Fermionic context for n = 2 (16-dimensional H0)."""
    return FermionContext.standard(2)
