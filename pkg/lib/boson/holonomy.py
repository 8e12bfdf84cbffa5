"""Projective flatness check for bosonic transport around geodesic triangles."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from lib.boson.gaussian_states import coherent_state, holomorphic_vector, overlap, transport_loop
from lib.geometry.phase_space import ComplexStructure, LinearPhaseSpace
from lib.geometry.symm_space import geodesic_between, triangle_curvature_integral

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class BosonHolonomyReport:
    gram: np.ndarray
    transported_gram: np.ndarray
    phase: float
    curvature_phase: float
    residual: float


def triangle_holonomy(
    vertices: tuple[ComplexStructure, ComplexStructure, ComplexStructure],
    space: LinearPhaseSpace,
    coefficients: ArrayLike,
    nodes: int | None = None,
) -> BosonHolonomyReport:
    """Cross Gram <c_k, U c_l> of coherent states against <c_k, c_l> after one loop.

    coefficients has one row of unitary-frame coordinates per coherent state.
    """
    a, b, c = vertices
    legs = [
        geodesic_between(a, b, space),
        geodesic_between(b, c, space),
        geodesic_between(c, a, space),
    ]
    states = [
        coherent_state(space, a, holomorphic_vector(space, a, row))
        for row in np.atleast_2d(np.asarray(coefficients, dtype=complex))
    ]
    moved = [transport_loop(s, legs) for s in states]
    count = len(states)
    gram = np.array([[overlap(states[k], states[l]) for l in range(count)] for k in range(count)])
    cross = np.array([[overlap(states[k], moved[l]) for l in range(count)] for k in range(count)])
    phase = float(np.angle(np.vdot(gram, cross)))
    residual = float(np.abs(cross - np.exp(1j * phase) * gram).max())
    curvature = triangle_curvature_integral(vertices, space, nodes=nodes)
    curvature_phase = float(np.real(1j * curvature))
    logger.info(
        "bosonic holonomy: phase %.6e, curvature phase %.6e, residual %.2e",
        phase, curvature_phase, residual,
    )
    return BosonHolonomyReport(gram, cross, phase, curvature_phase, residual)
