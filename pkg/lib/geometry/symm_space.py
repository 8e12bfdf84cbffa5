"""Geodesics, cut locus, Kahler data and curvature on the spaces of compatible structures."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import BranchCutError, CutLocusError, NotTangentError, ShapeError
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    projection_P,
    unitary_frame,
)
from lib.linalg import principal_log, takagi, youla, youla_block
from lib.utils.config import config

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GeodesicPath:
    """Geodesic t -> g_t J0 g_t^{-1} with g_t = exp(t M).

    M is [[0, U B U^T], [conj(U B U^T), 0]] in the unitary frame of J0.
    B is diag(b) (symplectic) or block-diag [[0, b], [-b, 0]] (euclidean).
    """

    space: LinearPhaseSpace
    base: ComplexStructure
    U: np.ndarray
    b: tuple[float, ...]
    t_range: tuple[float, float] = (0.0, 1.0)

    def __post_init__(self) -> None:
        n = self.space.n
        if self.U.shape != (n, n):
            raise ShapeError(f"frame element must be {n}x{n}")
        if any(b < 0 for b in self.b):
            raise ShapeError("normal-form parameters must be non-negative")
        limit = n if self.space.family is Family.SYMPLECTIC else n // 2
        if len(self.b) > limit:
            raise ShapeError(f"at most {limit} normal-form parameters for n={n}")

    @classmethod
    def constant(cls, space: LinearPhaseSpace, base: ComplexStructure) -> GeodesicPath:
        return cls(space=space, base=base, U=np.eye(space.n, dtype=complex), b=())

    @property
    def normal_form(self) -> np.ndarray:
        n = self.space.n
        if self.space.family is Family.SYMPLECTIC:
            values = np.zeros(n)
            values[: len(self.b)] = self.b
            return np.diag(values)
        return youla_block(self.b, n)

    def _frame_full(self) -> np.ndarray:
        return unitary_frame(self.base, self.space).full

    def _to_real(self, block: np.ndarray) -> np.ndarray:
        F = self._frame_full()
        return np.real(F @ block @ np.linalg.inv(F))

    @property
    def generator(self) -> np.ndarray:
        """Real generator M; J_t = exp(tM) J0 exp(-tM), dJ_t/dt = [M, J_t]."""
        Bp = self.U @ self.normal_form @ self.U.T
        zero = np.zeros_like(Bp)
        return self._to_real(np.block([[zero, Bp], [Bp.conj(), zero]]))

    def group_element(self, t: float) -> np.ndarray:
        """g_t from the explicit cosh/sinh or cos/sin blocks conjugated by k."""
        n = self.space.n
        B = self.normal_form
        if self.space.family is Family.SYMPLECTIC:
            c = np.diag(np.cosh(np.diag(B) * t))
            s = np.diag(np.sinh(np.diag(B) * t))
        else:
            beta = np.zeros(n)
            beta[: 2 * len(self.b) : 2] = self.b
            beta[1 : 2 * len(self.b) : 2] = self.b
            unit = np.zeros((n, n))
            nonzero = beta > 0
            unit[:, nonzero] = B[:, nonzero] / beta[nonzero]
            c = np.diag(np.cos(beta * t))
            s = unit @ np.diag(np.sin(beta * t))
        U = self.U
        block = np.block(
            [
                [U @ c @ U.conj().T, U @ s @ U.T],
                [U.conj() @ s @ U.conj().T, U.conj() @ c @ U.T],
            ]
        )
        return self._to_real(block)

    def velocity(self, t: float) -> np.ndarray:
        M = self.generator
        J = geodesic_sample(self, t).J
        return M @ J - J @ M

    @property
    def end(self) -> ComplexStructure:
        return geodesic_sample(self, self.t_range[1])


def geodesic_sample(path: GeodesicPath, t: float) -> ComplexStructure:
    g = path.group_element(t)
    return ComplexStructure(g @ path.base.J @ np.linalg.inv(g))


def cut_locus_det(J0: ComplexStructure, J1: ComplexStructure) -> float:
    """det((J0 + J1)/2); zero exactly on the cut locus."""
    return float(np.real(np.linalg.det(0.5 * (J0.J + J1.J))))


def geodesic_between(
    J0: ComplexStructure, J1: ComplexStructure, space: LinearPhaseSpace
) -> GeodesicPath:
    """Geodesic from J0 to J1 via M = log(-J1 J0)/2 (principal branch)."""
    if space.family is Family.EUCLIDEAN:
        det = cut_locus_det(J0, J1)
        if det <= config.numerics.degeneracy_threshold:
            raise CutLocusError(f"J1 is on the cut locus of J0 (det = {det:.3e})", det=det)
    try:
        M = 0.5 * principal_log(-J1.J @ J0.J)
    except BranchCutError as exc:
        raise CutLocusError(str(exc), det=cut_locus_det(J0, J1)) from exc

    F = unitary_frame(J0, space).full
    block = np.linalg.solve(F, M.astype(complex) @ F)
    n = space.n
    Bp = block[:n, n:]
    if space.family is Family.SYMPLECTIC:
        U, s = takagi(0.5 * (Bp + Bp.T))
        b = tuple(float(x) for x in s if x > 1e-12)
    else:
        U, values = youla(0.5 * (Bp - Bp.T))
        b = tuple(float(x) for x in values if x > 1e-12)
    logger.debug("geodesic_between: normal form b=%s", b)
    return GeodesicPath(space=space, base=J0, U=U, b=b)


def sub_path(path: GeodesicPath, t0: float, t1: float) -> GeodesicPath:
    """Geodesic from J_{t0} to J_{t1}, re-parametrised on [0, 1]."""
    return geodesic_between(geodesic_sample(path, t0), geodesic_sample(path, t1), path.space)


def check_tangent(J: ComplexStructure, dJ: ArrayLike, space: LinearPhaseSpace) -> np.ndarray:
    d = np.asarray(dJ, dtype=float)
    scale = max(1.0, float(np.abs(d).max(initial=0.0)))
    if np.abs(J.J @ d + d @ J.J).max() > 1e-8 * scale:
        raise NotTangentError("variation does not anticommute with J")
    if space.family is Family.SYMPLECTIC:
        residual = d.T @ space.form @ J.J + J.J.T @ space.form @ d
    else:
        residual = d + d.T
    if np.abs(residual).max() > 1e-8 * scale:
        raise NotTangentError("variation leaves the compatible family")
    return d


def _delta_p(dJ: np.ndarray) -> np.ndarray:
    return -0.5j * dJ


def ambient_eta(J: ComplexStructure, dJ1: ArrayLike, dJ2: ArrayLike) -> float:
    """2 tr(P dP dP P), polarised. Indefinite on the full space of complex structures."""
    P = projection_P(J)
    a, b = _delta_p(np.asarray(dJ1)), _delta_p(np.asarray(dJ2))
    return float(np.real(np.trace(P @ (a @ b + b @ a) @ P)))


def ambient_sigma(J: ComplexStructure, dJ1: ArrayLike, dJ2: ArrayLike) -> float:
    """i tr(P dP ^ dP P)."""
    P = projection_P(J)
    a, b = _delta_p(np.asarray(dJ1)), _delta_p(np.asarray(dJ2))
    return float(np.real(1j * np.trace(P @ (a @ b - b @ a) @ P)))


def _curvature_sign(family: Family) -> int:
    return 1 if family is Family.SYMPLECTIC else -1


def _metric_sign(family: Family) -> int:
    # Positive-definite restriction.
    return -1 if family is Family.SYMPLECTIC else 1


@dataclass(frozen=True)
class KahlerValue:
    eta: float
    sigma: float


def kahler_eval(
    J: ComplexStructure, dJ1: ArrayLike, dJ2: ArrayLike, space: LinearPhaseSpace
) -> KahlerValue:
    """Kahler metric and form of the compatible family, with sigma(X, IX) = eta(X, X)."""
    a = check_tangent(J, dJ1, space)
    b = check_tangent(J, dJ2, space)
    eta = _metric_sign(space.family) * ambient_eta(J, a, b)
    sigma = _curvature_sign(space.family) * ambient_sigma(J, a, b)
    return KahlerValue(eta=eta, sigma=sigma)


def curvature_2form(
    J: ComplexStructure, dJ1: ArrayLike, dJ2: ArrayLike, family: Family | str
) -> complex:
    """+-(1/2) tr(P dP ^ dP P); equals sigma/(2i) for the family's Kahler form."""
    P = projection_P(J)
    a, b = _delta_p(np.asarray(dJ1)), _delta_p(np.asarray(dJ2))
    value = 0.5 * np.trace(P @ (a @ b - b @ a) @ P)
    return complex(_curvature_sign(Family(family)) * value)


def complex_direction(J: ComplexStructure, dJ: ArrayLike) -> np.ndarray:
    """I(dJ) = -J dJ; in a graph chart this multiplies the velocity of Z by i."""
    return -J.J @ np.asarray(dJ)


def geodesic_length(path: GeodesicPath) -> float:
    """Length in the positive-definite Kahler metric (geodesics have constant speed)."""
    v = path.velocity(path.t_range[0])
    J = geodesic_sample(path, path.t_range[0])
    speed2 = kahler_eval(J, v, v, path.space).eta
    return float(np.sqrt(max(speed2, 0.0)) * (path.t_range[1] - path.t_range[0]))


def triangle_curvature_integral(
    vertices: tuple[ComplexStructure, ComplexStructure, ComplexStructure],
    space: LinearPhaseSpace,
    nodes: int | None = None,
    step: float = 1e-5,
) -> complex:
    """Integral of the curvature form over the geodesic cone from the first vertex.

    S(s, u) is the point at parameter s on the geodesic from a to the point at
    u on the geodesic b -> c; its boundary is the loop a -> b -> c -> a.
    """
    a, b, c = vertices
    count = config.quadrature.surface_nodes if nodes is None else nodes
    x, w = np.polynomial.legendre.leggauss(count)
    x = 0.5 * (x + 1.0)
    w = 0.5 * w
    edge = geodesic_between(b, c, space)

    def spoke(u: float) -> GeodesicPath:
        return geodesic_between(a, geodesic_sample(edge, u), space)

    total = 0.0 + 0.0j
    for u, wu in zip(x, w, strict=True):
        centre = spoke(u)
        plus = spoke(u + step)
        minus = spoke(u - step)
        for s, ws in zip(x, w, strict=True):
            J = geodesic_sample(centre, s)
            d_s = centre.velocity(s)
            d_u = (geodesic_sample(plus, s).J - geodesic_sample(minus, s).J) / (2 * step)
            total += wu * ws * curvature_2form(J, d_s, d_u, space.family)
    return complex(total)
