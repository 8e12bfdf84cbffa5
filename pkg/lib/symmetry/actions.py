"""Finite-group and circle actions on (V, omega) or (V, g), invariant forms and moment maps."""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import FixedPointError, ShapeError
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    unitary_frame,
)
from lib.grassmann import GrassmannAlgebra, GrassmannElement

logger = logging.getLogger(__name__)


class ActionKind(StrEnum):
    FINITE = "finite"
    TORUS = "torus"


class Parity(StrEnum):
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Either explicit real matrices or a circle acting with weights on V^{1,0}_{J0}."""

    space: LinearPhaseSpace
    kind: ActionKind
    elements: tuple[np.ndarray, ...] = ()
    weights: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.kind is ActionKind.TORUS and len(self.weights) != self.space.n:
            raise ShapeError(f"need {self.space.n} weights, got {len(self.weights)}")
        if self.kind is ActionKind.FINITE:
            residual = self.form_residual()
            if residual > 1e-12:
                raise FixedPointError(f"group element does not preserve the form ({residual:.2e})")

    @classmethod
    def torus(cls, space: LinearPhaseSpace, weights: ArrayLike) -> GroupAction:
        return cls(space, ActionKind.TORUS, weights=tuple(int(w) for w in weights))

    @classmethod
    def finite(cls, space: LinearPhaseSpace, elements: list[np.ndarray]) -> GroupAction:
        return cls(space, ActionKind.FINITE, elements=tuple(np.asarray(g, float) for g in elements))

    @classmethod
    def trivial(cls, space: LinearPhaseSpace) -> GroupAction:
        return cls.finite(space, [np.eye(space.dim)])

    def _frame(self) -> np.ndarray:
        return unitary_frame(self.space.base_j, self.space).full

    @property
    def generator(self) -> np.ndarray:
        """Real generator of the circle: i w_i on e_i, -i w_i on conj e_i."""
        if self.kind is not ActionKind.TORUS:
            return np.zeros((self.space.dim, self.space.dim))
        w = np.asarray(self.weights, dtype=float)
        f = self._frame()
        return np.real(f @ np.diag(np.concatenate([1j * w, -1j * w])) @ np.linalg.inv(f))

    def element(self, angle: float) -> np.ndarray:
        w = np.asarray(self.weights, dtype=float)
        f = self._frame()
        phases = np.concatenate([np.exp(1j * w * angle), np.exp(-1j * w * angle)])
        return np.real(f @ np.diag(phases) @ np.linalg.inv(f))

    def sample_elements(self, count: int = 7) -> list[np.ndarray]:
        if self.kind is ActionKind.FINITE:
            return list(self.elements)
        return [self.element(2 * np.pi * k / count + 0.3) for k in range(count)]

    def form_residual(self) -> float:
        form = self.space.form
        return max(
            (float(np.abs(g.T @ form @ g - form).max()) for g in self.sample_elements()),
            default=0.0,
        )

    def fixes(self, structure: ComplexStructure, tolerance: float = 1e-10) -> bool:
        if self.kind is ActionKind.TORUS:
            a = self.generator
            return bool(np.abs(a @ structure.J - structure.J @ a).max() <= tolerance)
        return all(
            np.abs(g @ structure.J - structure.J @ g).max() <= tolerance for g in self.elements
        )


@dataclass(frozen=True, eq=False)
class Representation:
    """A complex representation on C^m: circle weights or explicit matrices."""

    weights: tuple[int, ...] | None = None
    matrices: tuple[np.ndarray, ...] = field(default=())

    @property
    def dim(self) -> int:
        return len(self.weights) if self.weights is not None else self.matrices[0].shape[0]


def holomorphic_representation(action: GroupAction, structure: ComplexStructure) -> Representation:
    """The action on V^{1,0}_J in the unitary frame of J; J must be fixed."""
    if not action.fixes(structure):
        raise FixedPointError("J is not fixed by the action")
    space = action.space
    e = unitary_frame(structure, space).vectors
    if action.kind is ActionKind.TORUS:
        coords = space.coordinates(e, action.generator @ e)
        weights = np.real(np.diag(coords) / 1j)
        return Representation(weights=tuple(int(round(w)) for w in weights))
    return Representation(matrices=tuple(space.coordinates(e, g @ e) for g in action.elements))


@dataclass(frozen=True, eq=False)
class InvariantForms:
    parity: Parity
    basis: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        """Complex dimension."""
        return len(self.basis)


def _form_basis(m: int, parity: Parity) -> list[np.ndarray]:
    out = []
    for i in range(m):
        for j in range(i, m):
            if parity is Parity.ANTISYMMETRIC and i == j:
                continue
            b = np.zeros((m, m), dtype=complex)
            b[i, j] = 1.0
            b[j, i] += 1.0 if parity is Parity.SYMMETRIC else -1.0
            out.append(b)
    return out


def invariant_bilinear(rep: Representation, parity: Parity | str) -> InvariantForms:
    """Complex bilinear forms B with rho^T B rho = B."""
    par = Parity(parity)
    if rep.weights is not None:
        w = rep.weights
        basis = [
            b for b in _form_basis(len(w), par)
            if all(w[i] + w[j] == 0 for i, j in zip(*np.nonzero(b), strict=True))
        ]
        return InvariantForms(par, tuple(basis))
    candidates = _form_basis(rep.dim, par)
    if not candidates:
        return InvariantForms(par, ())
    images = []
    for b in candidates:
        avg = sum(r.T @ b @ r for r in rep.matrices) / len(rep.matrices)
        images.append(avg.reshape(-1))
    stacked = np.array(images).T
    u, s, _ = np.linalg.svd(stacked, full_matrices=False)
    rank = int(np.count_nonzero(s > 1e-10 * max(1.0, float(s.max(initial=0.0)))))
    basis = tuple(u[:, k].reshape(rep.dim, rep.dim) for k in range(rank))
    return InvariantForms(par, basis)


def fixed_tangent_dim(action: GroupAction, structure: ComplexStructure) -> int:
    """Complex dimension of (Sym^2 V^{1,0})^K (symplectic) or (Lambda^2 V^{1,0})^K (euclidean)."""
    rep = holomorphic_representation(action, structure)
    parity = Parity.SYMMETRIC if action.space.family is Family.SYMPLECTIC else Parity.ANTISYMMETRIC
    return invariant_bilinear(rep, parity).dim


def fixed_tangent_real_dim(action: GroupAction, structure: ComplexStructure) -> int:
    """Real dimension of invariant tangent vectors at J, by a direct null-space computation."""
    space = action.space
    dim = space.dim
    J = structure.J
    rows = []
    basis = []
    for a in range(dim):
        for b in range(dim):
            m = np.zeros((dim, dim))
            m[a, b] = 1.0
            basis.append(m)
    constraints: list[Callable[[np.ndarray], np.ndarray]] = [lambda d: J @ d + d @ J]
    if space.family is Family.SYMPLECTIC:
        constraints.append(lambda d: d.T @ space.form @ J + J.T @ space.form @ d)
    else:
        constraints.append(lambda d: d + d.T)
    if action.kind is ActionKind.TORUS:
        a_gen = action.generator
        constraints.append(lambda d: a_gen @ d - d @ a_gen)
    else:
        for g in action.elements:
            constraints.append(lambda d, g=g: g @ d - d @ g)
    for m in basis:
        rows.append(np.concatenate([c(m).reshape(-1) for c in constraints]))
    system = np.array(rows).T
    s = np.linalg.svd(system, compute_uv=False)
    return int(dim * dim - np.count_nonzero(s > 1e-9))


def moment_map_boson(action: GroupAction) -> Callable[[np.ndarray], np.ndarray]:
    """mu(x) = omega(x, A x) / 2 for the circle generator A, vectorised over points."""
    a = action.generator
    form = action.space.form

    def mu(points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return 0.5 * np.einsum("...a,ab,...b->...", pts, form @ a, pts)

    return mu


def moment_map_fermion(
    action: GroupAction, alg: GrassmannAlgebra | None = None
) -> GrassmannElement:
    """The two-form g(A x, y)/2 as a degree-2 element of the real exterior algebra."""
    space = action.space
    alg = GrassmannAlgebra.real(space.dim, "xi") if alg is None else alg
    beta = 0.5 * action.generator.T @ space.form
    return alg.quadratic(0.5 * beta)


@dataclass(frozen=True, eq=False)
class PropernessVerdict:
    obstructed: bool
    witness: np.ndarray | None
    moment_residual: float
    note: str


def check_properness(action: GroupAction, samples: int = 32, seed: int = 0) -> PropernessVerdict:
    """Certificate of non-properness of the moment map when fixed tangent directions exist.

    The witness columns span a real subspace V'_0 on which mu vanishes.
    """
    space = action.space
    base = space.base_j
    if fixed_tangent_dim(action, base) == 0:
        return PropernessVerdict(False, None, 0.0, "no obstruction found")
    e = unitary_frame(base, space).vectors
    mu = moment_map_boson(action)
    if action.kind is ActionKind.FINITE:
        witness = np.eye(space.dim)
    else:
        w = action.weights
        pair = next(
            (i, j) for i in range(space.n) for j in range(i, space.n) if w[i] + w[j] == 0
        )
        i, j = pair
        if i == j:
            witness = np.column_stack([2 * np.real(e[:, i]), 2 * np.real(1j * e[:, i])])
        else:
            # fixed points of the real structure z_i e_i + z_j e_j -> conj z_j e_i + conj z_i e_j
            witness = np.column_stack([
                2 * np.real(e[:, i] + e[:, j]),
                2 * np.real(1j * e[:, i] - 1j * e[:, j]),
            ])
    rng = np.random.default_rng(seed)
    points = rng.normal(size=(samples, witness.shape[1])) @ witness.T
    residual = float(np.abs(mu(points)).max())
    logger.info("properness check: obstruction found, moment residual %.2e", residual)
    return PropernessVerdict(True, witness, residual, "moment map vanishes on a real subspace")
