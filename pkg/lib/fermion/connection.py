"""The projective connection A^H on the bundle of fermionic Hilbert spaces."""

from __future__ import annotations

import logging

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import CutLocusError
from lib.fermion.context import FermionContext
from lib.geometry.phase_space import ComplexStructure, unitary_frame
from lib.geometry.symm_space import GeodesicPath, check_tangent, cut_locus_det, geodesic_sample
from lib.utils.config import config

logger = logging.getLogger(__name__)


def delta_p_components(frame: np.ndarray, dJ: np.ndarray) -> np.ndarray:
    """T^{ij} = g(conj e_j, dP conj e_i) with dP = -(i/2) dJ; antisymmetric for tangent dJ."""
    dP = -0.5j * dJ
    bar = np.conj(frame)
    return (dP @ bar).T @ bar


def connection_operator(
    ctx: FermionContext,
    structure: ComplexStructure,
    dJ: ArrayLike,
    frame: np.ndarray | None = None,
) -> np.ndarray:
    """A^H = (1/2) T^{ij} nabla_{e_i} nabla_{e_j} in a unitary frame at J."""
    d = check_tangent(structure, dJ, ctx.space)
    e = unitary_frame(structure, ctx.space).vectors if frame is None else frame
    T = delta_p_components(e, d)
    nablas = [ctx.nabla(e[:, i]) for i in range(ctx.n)]
    op = np.zeros((ctx.dim, ctx.dim), dtype=complex)
    for i in range(ctx.n):
        for j in range(ctx.n):
            if T[i, j] != 0:
                op += 0.5 * T[i, j] * (nablas[i] @ nablas[j])
    return op


def step_count(path: GeodesicPath, steps: int | None = None) -> int:
    t0, t1 = path.t_range
    per_unit = config.integration.steps_per_unit
    count = steps or max(config.integration.min_steps, int(np.ceil(per_unit * abs(t1 - t0))))
    minimum = config.integration.min_steps
    if count < minimum:
        raise ValueError(f"at least {minimum} integration steps are required")
    return count


def require_off_cut_locus(path: GeodesicPath, steps: int | None = None) -> float:
    """det((J0 + J_t)/2) on the integration grid; raises CutLocusError where it degenerates.

    Returns the value at the endpoint.
    """
    t0, t1 = path.t_range
    det = cut_locus_det(path.base, path.end)
    for t in np.linspace(t0, t1, step_count(path, steps) + 1):
        sampled = det if t == t1 else cut_locus_det(path.base, geodesic_sample(path, t))
        if sampled <= config.numerics.degeneracy_threshold:
            raise CutLocusError(
                f"path meets the cut locus at t={t:.4g} (det = {sampled:.3e})", det=sampled
            )
    return det


def transport_ode(
    ctx: FermionContext, path: GeodesicPath, psi0: ArrayLike, steps: int | None = None
) -> np.ndarray:
    """RK4 for d psi/dt = -A^H(J_t, dJ_t/dt) psi with the moving frame g_t e."""
    require_off_cut_locus(path, steps)
    count = step_count(path, steps)
    t0, t1 = path.t_range
    h = (t1 - t0) / count
    frame0 = unitary_frame(path.base, ctx.space).vectors

    def rhs(t: float, psi: np.ndarray) -> np.ndarray:
        J = geodesic_sample(path, t)
        frame = path.group_element(t) @ frame0
        return -connection_operator(ctx, J, path.velocity(t), frame=frame) @ psi

    psi = np.asarray(psi0, dtype=complex).copy()
    t = t0
    for _ in range(count):
        k1 = rhs(t, psi)
        k2 = rhs(t + h / 2, psi + h / 2 * k1)
        k3 = rhs(t + h / 2, psi + h / 2 * k2)
        k4 = rhs(t + h, psi + h * k3)
        psi = psi + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    logger.debug("transport_ode: %d steps, final norm %.12f", count, ctx.inner(psi, psi).real)
    return psi


def defining_residual(
    ctx: FermionContext, structure: ComplexStructure, dJ: ArrayLike, psi: ArrayLike
) -> float:
    """max_k |nabla_{conj e_k}(-A psi) - nabla_{dP conj e_k} psi| for psi in H_J."""
    d = np.asarray(dJ, dtype=float)
    e = unitary_frame(structure, ctx.space).vectors
    delta = -connection_operator(ctx, structure, d, frame=e) @ np.asarray(psi, dtype=complex)
    dP = -0.5j * d
    worst = 0.0
    for k in range(ctx.n):
        bar = np.conj(e[:, k])
        lhs = ctx.nabla(bar) @ delta
        rhs = ctx.nabla(dP @ bar) @ np.asarray(psi, dtype=complex)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst
