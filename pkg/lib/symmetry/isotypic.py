"""Lift of a group action to H0 and the isotypic splitting of a fixed H_J."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from lib.errors import FixedPointError
from lib.fermion.connection import connection_operator
from lib.fermion.context import FermionContext
from lib.geometry.phase_space import ComplexStructure, GraphChart, chart_to_J
from lib.grassmann import substitute_linear
from lib.symmetry.actions import (
    ActionKind,
    GroupAction,
    Parity,
    holomorphic_representation,
    invariant_bilinear,
)

logger = logging.getLogger(__name__)


def lifted_generator(ctx: FermionContext, action: GroupAction) -> np.ndarray:
    """Derivation of H0 induced on covectors: xi^j -> -sum_a A[j, a] xi^a."""
    a = action.generator
    op = np.zeros((ctx.dim, ctx.dim))
    for j in range(ctx.space.dim):
        for b in range(ctx.space.dim):
            if a[j, b] != 0:
                op -= a[j, b] * (ctx.wedge[b] @ ctx.interior[j])
    return op


def lifted_element(ctx: FermionContext, g: np.ndarray) -> np.ndarray:
    """Automorphism of H0 pulling forms back along g^{-1}."""
    images = np.linalg.inv(g).T
    columns = []
    for m in range(ctx.dim):
        basis = np.zeros(ctx.dim, dtype=complex)
        basis[m] = 1.0
        columns.append(substitute_linear(ctx.element(basis), images).coeffs)
    return np.column_stack(columns)


@dataclass(frozen=True, eq=False)
class IsotypicSplit:
    """Blocks keyed by circle weight, or by 'trivial'/'nontrivial' for finite groups.

    Each block holds H0 vectors as columns; weights are eigenvalues of i D on H_J.
    """

    blocks: dict[int | str, np.ndarray]
    invariance_residual: float

    @property
    def dims(self) -> dict[int | str, int]:
        return {k: v.shape[1] for k, v in self.blocks.items()}

    def weight_multiset(self) -> list[int]:
        return sorted(
            k for k, v in self.blocks.items() if isinstance(k, int) for _ in range(v.shape[1])
        )


def isotypic_split(
    ctx: FermionContext, action: GroupAction, structure: ComplexStructure
) -> IsotypicSplit:
    if not action.fixes(structure):
        raise FixedPointError("H_J carries no action unless J is fixed")
    sub = ctx.hilbert_subspace(structure)
    basis = sub.basis
    gram = ctx.gram
    if action.kind is ActionKind.TORUS:
        ops = [lifted_generator(ctx, action)]
    else:
        ops = [lifted_element(ctx, g) for g in action.elements]
    leak = 0.0
    for op in ops:
        image = op @ basis
        inside = basis @ (basis.conj().T @ gram @ image)
        leak = max(leak, float(np.abs(image - inside).max(initial=0.0)))

    blocks: dict[int | str, np.ndarray] = {}
    if action.kind is ActionKind.TORUS:
        restricted = 1j * (basis.conj().T @ gram @ ops[0] @ basis)
        vals, vecs = np.linalg.eigh(0.5 * (restricted + restricted.conj().T))
        for value in sorted({int(round(v)) for v in vals}):
            cols = vecs[:, np.abs(vals - value) < 0.5]
            blocks[value] = basis @ cols
    else:
        average = sum(basis.conj().T @ gram @ op @ basis for op in ops) / len(ops)
        vals, vecs = np.linalg.eigh(0.5 * (average + average.conj().T))
        trivial = vals > 0.5
        blocks["trivial"] = basis @ vecs[:, trivial]
        if np.any(~trivial):
            blocks["nontrivial"] = basis @ vecs[:, ~trivial]
    dims = {k: v.shape[1] for k, v in blocks.items()}
    logger.debug("isotypic split dims %s (leak %.1e)", dims, leak)
    return IsotypicSplit(blocks, leak)


def invariant_tangent_directions(
    action: GroupAction, structure: ComplexStructure, step: float = 1e-5
) -> list[np.ndarray]:
    """Real tangent vectors at a fixed J that commute with the action."""
    space = action.space
    rep = holomorphic_representation(action, structure)
    forms = invariant_bilinear(rep, Parity.ANTISYMMETRIC)
    J = structure.J
    out = []
    for b in forms.basis:
        for z in (b, 1j * b):
            plus = chart_to_J(GraphChart(space, structure, step * z)).J
            minus = chart_to_J(GraphChart(space, structure, -step * z)).J
            d = (plus - minus) / (2 * step)
            d = 0.5 * (d + J @ d @ J)
            out.append(0.5 * (d - d.T))
    return out


def connection_commutator(
    ctx: FermionContext, action: GroupAction, structure: ComplexStructure
) -> float:
    """Largest |[D, A^H]| over invariant tangent directions at J."""
    if action.kind is not ActionKind.TORUS:
        raise ValueError("commutator check needs a circle action")
    d_op = lifted_generator(ctx, action)
    worst = 0.0
    for dJ in invariant_tangent_directions(action, structure):
        a_op = connection_operator(ctx, structure, dJ)
        worst = max(worst, float(np.abs(d_op @ a_op - a_op @ d_op).max()))
    return worst
