"""Invariant part of the exterior algebra modulo the fermionic moment map of a circle."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg as sla

from lib.errors import AlgebraBoundError
from lib.grassmann import GrassmannAlgebra, GrassmannElement, multiply

logger = logging.getLogger(__name__)

MAX_QUOTIENT_N = 6


@dataclass(frozen=True, eq=False)
class QuotientRing:
    """(Lambda V* / <mu>)^K for mu = sum_i lambda_i theta^{2i-1} theta^{2i}.

    Computed in complex generators eta^i = theta^{2i-1} + i theta^{2i} where
    the circle acts diagonally and mu = (i/2) sum_i lambda_i eta^i conj(eta^i).
    ``complement`` lists invariant monomials (as masks) spanning the quotient.
    """

    relation: GrassmannElement
    invariant_dim: int
    ideal_dim: int
    complement: tuple[int, ...]
    relation_residual: float
    invariant_masks: tuple[int, ...] = ()
    ideal_basis: np.ndarray | None = None

    @property
    def dimension(self) -> int:
        return self.invariant_dim - self.ideal_dim

    def rank_modulo_ideal(self, masks: list[int]) -> int:
        """Number of independent classes the given invariant monomials span in the quotient."""
        index = {m: k for k, m in enumerate(self.invariant_masks)}
        vectors = np.zeros((len(index), len(masks)), dtype=complex)
        for col, m in enumerate(masks):
            vectors[index[m], col] = 1.0
        if self.ideal_basis is not None and self.ideal_basis.shape[1]:
            q = self.ideal_basis
            vectors = vectors - q @ (q.conj().T @ vectors)
        return _column_space(vectors)[1]


def _column_space(matrix: np.ndarray, tolerance: float = 1e-10) -> tuple[np.ndarray, int]:
    if matrix.shape[1] == 0:
        return np.zeros((matrix.shape[0], 0)), 0
    u, s, _ = np.linalg.svd(matrix, full_matrices=False)
    return u, int(np.count_nonzero(s > tolerance * max(1.0, float(s[0]))))


def s1_quotient_ring(n: int, weights: ArrayLike) -> QuotientRing:
    lam = [float(w) for w in np.atleast_1d(np.asarray(weights, dtype=float))]
    if n > MAX_QUOTIENT_N:
        raise AlgebraBoundError(f"quotient rings limited to n <= {MAX_QUOTIENT_N}, got {n}")
    if not 1 <= len(lam) <= n:
        raise ValueError(f"need between 1 and {n} weights, got {len(lam)}")
    alg = GrassmannAlgebra.complex_paired(n, "eta")
    gen_weights = np.zeros(alg.size)
    relation = alg.zero()
    for i, w in enumerate(lam):
        gen_weights[2 * i], gen_weights[2 * i + 1] = w, -w
        relation = relation + alg.monomial([2 * i, 2 * i + 1], 0.5j * w)

    invariant = np.flatnonzero(np.abs(alg.bits @ gen_weights) < 1e-12)
    columns = []
    for m in invariant:
        mono = alg.zero()
        mono.coeffs[m] = 1.0
        columns.append(multiply(relation, mono).coeffs)
    full = np.column_stack(columns)
    # mu times an invariant is invariant, so the ideal lives on the invariant rows
    outside = np.delete(full, invariant, axis=0)
    ideal = full[invariant]
    u, ideal_dim = _column_space(ideal)
    span = u[:, :ideal_dim]
    leftover = np.eye(len(invariant)) - span @ span.conj().T
    _, _, pivots = sla.qr(leftover, pivoting=True)
    quotient_dim = len(invariant) - ideal_dim
    complement = tuple(sorted(int(invariant[p]) for p in pivots[:quotient_dim]))
    result = QuotientRing(
        relation,
        len(invariant),
        ideal_dim,
        complement,
        float(np.abs(outside).max(initial=0.0)),
        tuple(int(m) for m in invariant),
        span,
    )
    logger.info(
        "S1 quotient n=%d weights=%s: invariants %d, ideal %d, quotient %d",
        n,
        lam,
        result.invariant_dim,
        ideal_dim,
        result.dimension,
    )
    return result
