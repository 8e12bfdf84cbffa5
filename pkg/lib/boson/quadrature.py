"""Gauss-Hermite oracle for the Bergman-kernel form of bosonic transport."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from lib.boson.gaussian_states import GaussianState, kernel_matrix
from lib.boson.polynomials import PolynomialSection
from lib.errors import QuadratureError
from lib.geometry.phase_space import ComplexStructure, LinearPhaseSpace
from lib.geometry.symm_space import GeodesicPath, cut_locus_det
from lib.utils.config import config

logger = logging.getLogger(__name__)

State = GaussianState | PolynomialSection


@dataclass(frozen=True)
class QuadratureResult:
    values: np.ndarray
    error_estimate: float
    nodes: int


def _decay_matrix(state: State, target: ComplexStructure, space: LinearPhaseSpace) -> np.ndarray:
    """Real positive matrix R with |integrand| ~ exp(-y^T R y / 2)."""
    s0 = state.structure.q_matrix(space)
    s1 = target.q_matrix(space)
    r = 0.5 * (s0 + s1)
    if isinstance(state, GaussianState):
        r = r - state.quadratic.real
    return 0.5 * (r + r.T)


def _integrate(
    integrand: Callable[[np.ndarray], np.ndarray],
    decay: np.ndarray,
    nodes: int,
) -> np.ndarray:
    """Integral against d^{2n}y / (2 pi)^n, integrand evaluated on (points, dim) arrays."""
    dim = decay.shape[0]
    u, w = np.polynomial.hermite_e.hermegauss(nodes)
    chol = np.linalg.cholesky(decay)
    transform = np.linalg.inv(chol).T
    grid = np.array(list(itertools.product(u, repeat=dim)))
    weights = np.prod(np.array(list(itertools.product(w, repeat=dim))), axis=1)
    ys = grid @ transform.T
    correction = np.exp(0.5 * np.sum(grid**2, axis=1))
    values = integrand(ys)
    jac = 1.0 / np.prod(np.diag(chol))
    return jac * (values * (weights * correction)[:, None]).sum(axis=0) / (2 * np.pi) ** (dim // 2)


def _evaluate(
    state: State, target: ComplexStructure, scale: float, points: np.ndarray, nodes: int
) -> np.ndarray:
    space = state.space
    s1 = target.q_matrix(space)
    kernel = kernel_matrix(space, target)
    outer = np.exp(-0.25 * np.einsum("pa,ab,pb->p", points, s1, points))
    cross_lin = points @ kernel.T  # (p, dim): row p is L x_p

    def integrand(ys: np.ndarray) -> np.ndarray:
        inner = np.exp(-0.25 * np.einsum("ya,ab,yb->y", ys, s1, ys)) * state(ys)
        return inner[:, None] * np.exp(ys @ cross_lin.T)

    return scale * outer * _integrate(integrand, _decay_matrix(state, target, space), nodes)


def bergman_transport_quadrature(
    path: GeodesicPath,
    state: State,
    points: ArrayLike,
    nodes: int | None = None,
    coarse_nodes: int | None = None,
    tolerance: float = 1e-8,
) -> QuadratureResult:
    """det^{1/4} times the kernel integral of state, sampled at points.

    The estimate compares two node counts; a disagreement above tolerance triggers a
    refinement with more nodes.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    target = path.end
    scale = cut_locus_det(path.base, target) ** 0.25
    fine = nodes or config.quadrature.nodes
    coarse = coarse_nodes or config.quadrature.coarse_nodes
    attempt = 0
    for attempt_state in Retrying(
        stop=stop_after_attempt(config.retry.max_attempts),
        retry=retry_if_exception_type(QuadratureError),
        reraise=True,
    ):
        with attempt_state:
            bump = 10 * attempt
            attempt += 1
            high = _evaluate(state, target, scale, pts, fine + bump)
            low = _evaluate(state, target, scale, pts, coarse + bump)
            estimate = float(np.abs(high - low).max())
            if estimate > tolerance:
                logger.warning("quadrature disagreement %.2e with %d nodes", estimate, fine + bump)
                raise QuadratureError(
                    f"quadrature levels disagree by {estimate:.2e}", estimate=estimate
                )
    return QuadratureResult(values=high, error_estimate=estimate, nodes=fine + bump)


def quadrature_inner_product(first: State, second: State, nodes: int | None = None) -> complex:
    """<first, second> by Gauss-Hermite in the first state's Gaussian weight."""
    space = first.space
    count = nodes or config.quadrature.nodes
    decay = 0.25 * (first.structure.q_matrix(space) + second.structure.q_matrix(space))
    decay = 0.5 * (decay + decay.T)

    def integrand(ys: np.ndarray) -> np.ndarray:
        return (np.conj(first(ys)) * second(ys))[:, None]

    return complex(_integrate(integrand, decay, count)[0])
