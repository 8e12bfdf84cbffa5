"""Configuration management for the quantisation verification lab.

Numerical settings are fixed defaults; a scenario document overrides them per run. Only
the output location and the log level come from the environment.
"""

import os
from dataclasses import dataclass, field

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class NumericsConfig:
    """Tolerances and bounds shared by the numerical modules."""

    skew_tolerance: float = 1e-10
    # Consecutive branch samples must satisfy |delta| < ratio * |value|.
    continuity_ratio: float = 0.5
    compatibility_threshold: float = 1e-10
    degeneracy_threshold: float = 1e-8
    max_generators: int = 16
    max_pairing_degree: int = 12


@dataclass(frozen=True)
class IntegrationConfig:
    """Geodesic sampling and ODE integration."""

    steps_per_unit: int = 200
    min_steps: int = 10


@dataclass(frozen=True)
class QuadratureConfig:
    """Gauss-Hermite quadrature levels."""

    nodes: int = 40
    coarse_nodes: int = 30
    surface_nodes: int = 16


@dataclass(frozen=True)
class RetryConfig:
    """Refinement retries for branch tracking and quadrature."""

    max_attempts: int = 4


@dataclass
class PathConfig:
    """Where reports are written."""

    output_dir: str = os.getenv("QUANTLAB_OUTPUT_DIR", "reports")


@dataclass
class AppConfig:
    """Application configuration."""

    numerics: NumericsConfig = field(default_factory=NumericsConfig)
    integration: IntegrationConfig = field(default_factory=IntegrationConfig)
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    retry: RetryConfig = field(default_factory=RetryConfig)
    paths: PathConfig = field(default_factory=PathConfig)
    log_level: str = os.getenv("LOG_LEVEL", "INFO")


config = AppConfig()
