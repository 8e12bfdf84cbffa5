"""Antilinear conjugations commuting with a unitary representation.

An antilinear map is stored as a matrix M acting by x -> M conj(x). The
hermitian form is h(x, y) = y^H H x, linear in x.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import ShapeError
from lib.geometry.phase_space import standard_omega
from lib.symmetry.actions import Representation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ConjugationOperator:
    matrix: np.ndarray
    epsilon: int

    def __call__(self, x: ArrayLike) -> np.ndarray:
        return self.matrix @ np.conj(np.asarray(x, dtype=complex))

    def square(self) -> np.ndarray:
        return self.matrix @ self.matrix.conj()

    def as_real_map(self) -> np.ndarray:
        """Real matrix of the map on R^{2m} under z = x[:m] + i x[m:]."""
        mr, mi = self.matrix.real, self.matrix.imag
        return np.block([[mr, mi], [mi, -mr]])


@dataclass(frozen=True, eq=False)
class ConjugationReport:
    operator: ConjugationOperator
    square_residual: float
    invariance_residual: float
    hermitian_residual: float
    eigenvalues: np.ndarray


def _hermitian_power(h: np.ndarray, power: float) -> np.ndarray:
    vals, vecs = np.linalg.eigh(h)
    return (vecs * vals**power) @ vecs.conj().T


def _matrices(rep: Representation) -> list[np.ndarray]:
    if rep.weights is not None:
        # two generic circle elements suffice for weight representations
        return [np.diag(np.exp(1j * np.asarray(rep.weights) * a)) for a in (0.7, 1.9)]
    return list(rep.matrices)


def normalize_conjugation(
    rep: Representation,
    hermitian: ArrayLike,
    seed: ArrayLike,
    epsilon: int,
) -> ConjugationReport:
    """Turn a commuting antilinear C0 into C with C^2 = epsilon and h(Cx, Cy) = h(y, x).

    beta(x, y) = h(x, C0 y) + epsilon h(y, C0 x) is invariant; C is read off
    from beta(x, y) = h(x, C y) and rescaled on each eigenspace of epsilon C^2.
    """
    if epsilon not in (1, -1):
        raise ValueError(f"epsilon must be +1 or -1, got {epsilon}")
    h = np.asarray(hermitian, dtype=complex)
    m0 = np.asarray(seed, dtype=complex)
    if h.shape != (rep.dim, rep.dim) or m0.shape != h.shape:
        raise ShapeError(f"expected {rep.dim}x{rep.dim} forms, got {h.shape} and {m0.shape}")
    seed_matrix = m0.conj().T @ h
    beta = seed_matrix.T + epsilon * seed_matrix
    m = np.linalg.solve(h, beta.conj())
    t = epsilon * (m @ m.conj())
    hs = _hermitian_power(h, 0.5)
    hs_inv = _hermitian_power(h, -0.5)
    t_sym = hs @ t @ hs_inv
    t_sym = 0.5 * (t_sym + t_sym.conj().T)
    vals, vecs = np.linalg.eigh(t_sym)
    if vals.min() <= 0:
        raise ValueError("epsilon C^2 is not positive; seed is degenerate")
    t_inv_sqrt = hs_inv @ ((vecs * vals**-0.5) @ vecs.conj().T) @ hs
    op = ConjugationOperator(m @ t_inv_sqrt.conj(), epsilon)

    square_residual = float(np.abs(op.square() - epsilon * np.eye(rep.dim)).max())
    invariance_residual = max(
        float(np.abs(r @ op.matrix - op.matrix @ r.conj()).max()) for r in _matrices(rep)
    )
    hermitian_residual = float(np.abs(op.matrix.conj().T @ h @ op.matrix - h.conj()).max())
    logger.debug(
        "conjugation: eps=%d square %.1e invariance %.1e hermitian %.1e",
        epsilon,
        square_residual,
        invariance_residual,
        hermitian_residual,
    )
    return ConjugationReport(op, square_residual, invariance_residual, hermitian_residual, vals)


def real_structure_defects(op: ConjugationOperator, n: int) -> dict[str, float]:
    """omega(Rx, Ry) + omega(x, y) and g(Rx, Ry) - g(x, y) for R on (R^{2n}, J0)."""
    r = op.as_real_map()
    omega = standard_omega(n)
    return {
        "omega": float(np.abs(r.T @ omega @ r + omega).max()),
        "g": float(np.abs(r.T @ r - np.eye(2 * n)).max()),
    }
