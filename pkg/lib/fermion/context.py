"""Pre-quantum fermionic Hilbert space H0 and the polarised subspaces H_J.

States are coefficient vectors over the monomial basis of the real exterior algebra
on xi^1..xi^{2n}; bit a of the index marks xi^{a+1}.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

import numpy as np
from numpy.typing import ArrayLike
from scipy import linalg as sla

from lib.errors import CompatibilityError
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    check_compatibility,
    unitary_frame,
)
from lib.grassmann import GrassmannAlgebra, GrassmannElement, full_integral, hodge_star
from lib.grassmann.algebra import star_involution
from lib.grassmann.gaussians import fermionic_gaussian, tilde_measure

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class HilbertSubspace:
    """Orthonormal basis of H_J; columns follow subsets of {1..n} by size, then lexically."""

    structure: ComplexStructure
    basis: np.ndarray
    raw: np.ndarray
    frame: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[1]


@dataclass(frozen=True, eq=False)
class FermionContext:
    """Euclidean (V, g) with the exterior algebra over the real generators."""

    space: LinearPhaseSpace
    _subspaces: dict[bytes, HilbertSubspace] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.space.family is not Family.EUCLIDEAN:
            raise ValueError("fermionic quantisation needs a euclidean space")

    @classmethod
    def standard(cls, n: int) -> FermionContext:
        return cls(LinearPhaseSpace.standard(n, Family.EUCLIDEAN))

    @property
    def n(self) -> int:
        return self.space.n

    @cached_property
    def algebra(self) -> GrassmannAlgebra:
        return GrassmannAlgebra.real(self.space.dim, "xi")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def _operators(self) -> tuple[np.ndarray, np.ndarray]:
        """Stacked matrices of iota_{E_a} and xi^a ^ on H0."""
        size = self.space.dim
        interior = np.zeros((size, self.dim, self.dim))
        wedge = np.zeros((size, self.dim, self.dim))
        for m in range(self.dim):
            for a in range(size):
                sign = -1.0 if bin(m & ((1 << a) - 1)).count("1") % 2 else 1.0
                if m >> a & 1:
                    interior[a, m ^ (1 << a), m] = sign
                else:
                    wedge[a, m | (1 << a), m] = sign
        return interior, wedge

    @property
    def interior(self) -> np.ndarray:
        return self._operators[0]

    @property
    def wedge(self) -> np.ndarray:
        return self._operators[1]

    @cached_property
    def gram(self) -> np.ndarray:
        """G0 = diag(2^{|I| - n}): the Hermitian form of the Hodge star of g/2."""
        return np.diag(np.power(2.0, self.algebra.degrees - self.n))

    def element(self, psi: ArrayLike) -> GrassmannElement:
        return GrassmannElement(self.algebra, np.asarray(psi, dtype=complex).copy())

    def inner(self, psi: ArrayLike, phi: ArrayLike) -> complex:
        """<psi, phi>_0, antilinear in the first argument."""
        return complex(np.conj(np.asarray(psi)) @ self.gram @ np.asarray(phi))

    def adjoint(self, op: np.ndarray) -> np.ndarray:
        g = np.diag(self.gram)
        return (op.conj().T * g[None, :]) / g[:, None]

    def nabla(self, x: ArrayLike) -> np.ndarray:
        """nabla_x = iota_x - (1/2) nu(x) ^, extended complex-linearly in x."""
        v = np.asarray(x, dtype=complex)
        covector = self.space.musical(v)
        return np.tensordot(v, self.interior, axes=1) - 0.5 * np.tensordot(
            covector, self.wedge, axes=1
        )

    def clifford(self, alpha: ArrayLike) -> np.ndarray:
        """alpha-hat = nabla_{nu^-1 alpha} + alpha ^."""
        a = np.asarray(alpha, dtype=complex)
        return self.nabla(self.space.inverse_musical(a)) + np.tensordot(a, self.wedge, axes=1)

    def wedge_by(self, alpha: ArrayLike) -> np.ndarray:
        return np.tensordot(np.asarray(alpha, dtype=complex), self.wedge, axes=1)

    def interior_by(self, x: ArrayLike) -> np.ndarray:
        return np.tensordot(np.asarray(x, dtype=complex), self.interior, axes=1)

    def vacuum_factor(self, structure: ComplexStructure) -> GrassmannElement:
        """e^{(i/2) varpi_J}."""
        return fermionic_gaussian(self.algebra, 0.5 * structure.varpi_matrix(self.space))

    def hilbert_subspace(self, structure: ComplexStructure) -> HilbertSubspace:
        key = structure.J.tobytes()
        cached = self._subspaces.get(key)
        if cached is not None:
            return cached
        report = check_compatibility(structure, self.space)
        if not report.passed:
            raise CompatibilityError(
                f"J is not compatible with g (square residual {report.square_residual:.2e}, "
                f"form residual {report.form_residual:.2e})"
            )
        frame = unitary_frame(structure, self.space).vectors
        vacuum = self.vacuum_factor(structure)
        thetas = [self.algebra.linear(np.conj(frame[:, i])) for i in range(self.n)]
        columns = []
        for k in range(self.n + 1):
            for subset in combinations(range(self.n), k):
                state = vacuum
                for i in subset:
                    state = state * thetas[i]
                columns.append(state.coeffs)
        raw = np.column_stack(columns)
        overlap = raw.conj().T @ self.gram @ raw
        basis = raw @ sla.inv(sla.sqrtm(overlap))
        subspace = HilbertSubspace(structure=structure, basis=basis, raw=raw, frame=frame)
        self._subspaces[key] = subspace
        logger.debug("H_J built for n=%d, raw Gram deviation %.2e", self.n,
                     float(np.abs(overlap - np.eye(len(columns))).max()))
        return subspace

    def annihilator_rank(self, structure: ComplexStructure) -> int:
        """Dimension of the joint kernel of nabla over V^{0,1}_J, by SVD."""
        frame = unitary_frame(structure, self.space).vectors
        stacked = np.vstack([self.nabla(np.conj(frame[:, i])) for i in range(self.n)])
        s = np.linalg.svd(stacked, compute_uv=False)
        tol = max(stacked.shape) * np.finfo(float).eps * max(1.0, float(s.max(initial=0.0)))
        return int(self.dim - np.count_nonzero(s > max(tol, 1e-9)))

    def project(self, structure: ComplexStructure, psi: ArrayLike) -> np.ndarray:
        """Orthogonal projection onto H_J."""
        b = self.hilbert_subspace(structure).basis
        return b @ (b.conj().T @ (self.gram @ np.asarray(psi, dtype=complex)))

    def coordinates_in(self, structure: ComplexStructure, psi: ArrayLike) -> np.ndarray:
        b = self.hilbert_subspace(structure).basis
        return b.conj().T @ (self.gram @ np.asarray(psi, dtype=complex))

    def inner_product_hodge(self, psi: ArrayLike, phi: ArrayLike) -> complex:
        """Integral of conj(psi) ^ *_0 phi against eps_g, with *_0 = 2^{p-n} *."""
        orientation = self.space.orientation_sign
        starred = hodge_star(self.element(phi), orientation=orientation, degree_base=2.0)
        product = self.element(np.conj(np.asarray(psi))) * starred
        return complex(product.coeffs[-1]) * orientation

    def inner_product_berezin(
        self, structure: ComplexStructure, psi: ArrayLike, phi: ArrayLike
    ) -> complex:
        """Integral of phi1* ^ phi2 ^ e^{i varpi_J} against tilde eps_g.

        Here psi = e^{(i/2) varpi_J} phi.

        Only meaningful for states in H_J.
        """
        strip = fermionic_gaussian(self.algebra, -0.5 * structure.varpi_matrix(self.space))
        weight = fermionic_gaussian(self.algebra, structure.varpi_matrix(self.space))
        left = star_involution(strip * self.element(psi))
        right = strip * self.element(phi)
        measure = tilde_measure(self.n, self.space.orientation_sign)
        return full_integral(left * right * weight, range(self.space.dim), measure)


def principal_angles(
    ctx: FermionContext, first: ComplexStructure, second: ComplexStructure
) -> np.ndarray:
    """Principal angles between H_J and H_J' from the SVD of the cross Gram matrix."""
    a = ctx.hilbert_subspace(first).basis
    b = ctx.hilbert_subspace(second).basis
    s = np.linalg.svd(a.conj().T @ ctx.gram @ b, compute_uv=False)
    return np.arccos(np.clip(s, -1.0, 1.0))

