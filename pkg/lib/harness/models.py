"""Scenario configuration models for the verification runner."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Final, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from lib.errors import ConfigError
from lib.geometry.phase_space import Family

SUITE_NAMES: Final = (
    "geometry",
    "grassmann",
    "fermion-transport",
    "fermion-flatness",
    "boson-transport",
    "boson-flatness",
    "symmetry",
    "cut-locus",
    "paper-discrepancies",
)

SuiteName = Literal[
    "geometry",
    "grassmann",
    "fermion-transport",
    "fermion-flatness",
    "boson-transport",
    "boson-flatness",
    "symmetry",
    "cut-locus",
    "paper-discrepancies",
]

# upper bounds on n per suite
SUITE_N_LIMITS: Final = {
    "geometry": 6,
    "grassmann": 4,
    "fermion-transport": 4,
    "fermion-flatness": 4,
    "boson-transport": 2,
    "boson-flatness": 2,
    "symmetry": 6,
    "cut-locus": 4,
    "paper-discrepancies": 2,
}

PositiveTol = Annotated[float, Field(gt=0.0)]


class Tolerances(BaseModel):
    model_config = ConfigDict(extra="forbid")

    algebra: PositiveTol = 1e-12
    pfaffian: PositiveTol = 1e-10
    transport: PositiveTol = 1e-7
    transport_near_cut: PositiveTol = 1e-5
    closed_form: PositiveTol = 1e-10
    scaling: PositiveTol = 1e-9
    unitarity: PositiveTol = 1e-9
    flatness: PositiveTol = 1e-6
    curvature: PositiveTol = 1e-4
    quadrature: PositiveTol = 1e-7
    conjugation: PositiveTol = 1e-10
    moment: PositiveTol = 1e-12

    def scaled(self, factor: float) -> Tolerances:
        if factor <= 0:
            raise ConfigError(f"tolerance scale must be positive, got {factor}")
        return Tolerances(**{k: v * factor for k, v in self.model_dump().items()})


class GeodesicSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    b: list[Annotated[float, Field(ge=0.0)]] = Field(default_factory=lambda: [0.3, 0.8, 1.2])
    k_seed: Annotated[int, Field(ge=0)] = 0


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    suite: SuiteName
    n: Annotated[int, Field(ge=1)] = 2
    family: Family | None = None
    geodesic: GeodesicSpec = Field(default_factory=GeodesicSpec)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    seed: Annotated[int, Field(ge=0, lt=2**64)] = 42
    steps: Annotated[int | None, Field(ge=10)] = None
    quadrature_nodes: Annotated[int | None, Field(ge=20, le=120)] = None
    samples: Annotated[int, Field(ge=1, le=200)] = 8
    out: str | None = None

    @model_validator(mode="after")
    def _check_bounds(self) -> ScenarioConfig:
        limit = SUITE_N_LIMITS[self.suite]
        if self.n > limit:
            raise ValueError(f"suite {self.suite!r} supports n <= {limit}, got n={self.n}")
        fermionic = self.suite.startswith("fermion") or self.suite == "cut-locus"
        if fermionic and self.family is Family.SYMPLECTIC:
            raise ValueError(f"suite {self.suite!r} is euclidean only")
        if self.suite.startswith("boson") and self.family is Family.EUCLIDEAN:
            raise ValueError(f"suite {self.suite!r} is symplectic only")
        return self


def load_config(path: Path | str, **overrides: object) -> ScenarioConfig:
    """Read a JSON scenario document and apply CLI overrides; raises ConfigError."""
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read scenario config {path}: {exc}") from exc
    raw.update({k: v for k, v in overrides.items() if v is not None})
    return validate_config(raw)


def validate_config(raw: dict[str, object]) -> ScenarioConfig:
    try:
        return ScenarioConfig.model_validate(raw)
    except ValidationError as exc:
        details = "; ".join(
            f"{'.'.join(str(p) for p in err['loc']) or 'config'}: {err['msg']}"
            for err in exc.errors()
        )
        raise ConfigError(f"invalid scenario config: {details}") from exc
