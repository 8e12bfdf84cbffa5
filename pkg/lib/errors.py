"""Exception hierarchy for the quantisation lab."""

from __future__ import annotations


class QuantLabError(RuntimeError):
    """Base class for all lab errors."""


class ShapeError(QuantLabError):
    """Matrix or vector has the wrong shape."""


class SkewSymmetryError(QuantLabError):
    """Matrix expected to be skew-symmetric is not."""


class BranchCutError(QuantLabError):
    """Eigenvalue on the closed negative real axis; no principal logarithm."""


class BranchResolutionError(QuantLabError):
    """Consecutive samples too far apart to continue a root branch."""

    def __init__(self, message: str, index: int) -> None:
        super().__init__(message)
        self.index = index


class DegeneratePairingError(QuantLabError):
    """A pairing determinant vanished along a path."""

    def __init__(self, message: str, t: float | None = None) -> None:
        super().__init__(message)
        self.t = t


class ChartDomainError(QuantLabError):
    """J lies outside the graph chart centred at J0."""


class CompatibilityError(QuantLabError):
    """J is not a compatible complex structure for the space."""


class CutLocusError(QuantLabError):
    """J1 is on the cut locus of J0."""

    def __init__(self, message: str, det: float) -> None:
        super().__init__(message)
        self.det = det


class NotTangentError(QuantLabError):
    """A variation is not tangent to the compatible family."""


class AlgebraMismatchError(QuantLabError):
    """Grassmann elements belong to different algebras."""


class AlgebraBoundError(QuantLabError):
    """Requested Grassmann algebra exceeds the generator bound."""


class UnpairedGeneratorError(QuantLabError):
    """A generator has no conjugate in its algebra."""


class PairingBoundError(QuantLabError):
    """Wick pairing enumeration exceeds the configured degree bound."""


class FixedPointError(QuantLabError):
    """Complex structure is not fixed by the group action."""


class QuadratureError(QuantLabError):
    """Quadrature levels disagree beyond tolerance."""

    def __init__(self, message: str, estimate: float) -> None:
        super().__init__(message)
        self.estimate = estimate


class ConfigError(QuantLabError):
    """Scenario configuration is invalid."""
