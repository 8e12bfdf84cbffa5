"""Holonomy of the fermionic connection around geodesic triangles."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from lib.fermion.context import FermionContext
from lib.fermion.transport import transport_bogoliubov
from lib.geometry.half_forms import half_form_transport
from lib.geometry.phase_space import ComplexStructure, LinearPhaseSpace
from lib.geometry.symm_space import GeodesicPath, geodesic_between, triangle_curvature_integral

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HolonomyReport:
    operator: np.ndarray
    phase: float
    curvature_phase: float
    off_identity_residual: float
    corrected: np.ndarray
    corrected_residual: float


def triangle_legs(
    vertices: tuple[ComplexStructure, ComplexStructure, ComplexStructure],
    space: LinearPhaseSpace,
) -> list[GeodesicPath]:
    a, b, c = vertices
    return [
        geodesic_between(a, b, space),
        geodesic_between(b, c, space),
        geodesic_between(c, a, space),
    ]


def scalar_phase(op: np.ndarray) -> tuple[float, float]:
    """Phase phi of the best multiple e^{i phi} I and the residual max |op - e^{i phi} I|."""
    phase = float(np.angle(np.trace(op)))
    residual = float(np.abs(op - np.exp(1j * phase) * np.eye(op.shape[0])).max())
    return phase, residual


def holonomy(
    ctx: FermionContext,
    vertices: tuple[ComplexStructure, ComplexStructure, ComplexStructure],
    nodes: int | None = None,
) -> HolonomyReport:
    """Compose the three leg transports; compare the phase with i times the curvature integral."""
    op = np.eye(2**ctx.n, dtype=complex)
    root = 1.0 + 0.0j
    for leg in triangle_legs(vertices, ctx.space):
        op = transport_bogoliubov(ctx, leg).matrix @ op
        root *= half_form_transport(leg).coefficient.value
    phase, residual = scalar_phase(op)
    curvature = triangle_curvature_integral(vertices, ctx.space, nodes=nodes)
    curvature_phase = float(np.real(1j * curvature))
    corrected = root * op
    corrected_residual = float(np.abs(corrected - np.eye(op.shape[0])).max())
    logger.info(
        "fermionic holonomy: phase %.6e, curvature phase %.6e, residual %.2e, corrected %.2e",
        phase, curvature_phase, residual, corrected_residual,
    )
    return HolonomyReport(op, phase, curvature_phase, residual, corrected, corrected_residual)
