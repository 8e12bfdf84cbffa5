"""Linear phase spaces, compatible complex structures, unitary frames and graph charts."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from lib.errors import ChartDomainError, CompatibilityError, ShapeError
from lib.linalg import pfaffian
from lib.utils.config import config

logger = logging.getLogger(__name__)


class Family(StrEnum):
    SYMPLECTIC = "symplectic"
    EUCLIDEAN = "euclidean"


def standard_j(n: int) -> np.ndarray:
    """J0 = [[0, -I], [I, 0]]."""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, -eye], [eye, zero]])


def standard_omega(n: int) -> np.ndarray:
    """omega = [[0, I], [-I, 0]], so that omega(x, J0 x) = |x|^2."""
    return -standard_j(n)


@dataclass(frozen=True, eq=False)
class LinearPhaseSpace:
    """(V, omega) or (V, g) on R^{2n} in the standard basis."""

    n: int
    family: Family
    form: np.ndarray

    @classmethod
    def standard(cls, n: int, family: Family | str) -> LinearPhaseSpace:
        fam = Family(family)
        form = standard_omega(n) if fam is Family.SYMPLECTIC else np.eye(2 * n)
        return cls(n=n, family=fam, form=form)

    def __post_init__(self) -> None:
        if self.form.shape != (2 * self.n, 2 * self.n):
            raise ShapeError(f"form must be {2 * self.n}x{2 * self.n}")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def orientation_sign(self) -> int:
        """Sign of the J0 orientation relative to the standard basis."""
        return -1 if (self.n * (self.n - 1) // 2) % 2 else 1

    @property
    def base_j(self) -> ComplexStructure:
        return ComplexStructure(standard_j(self.n))

    def bilinear(self, x: ArrayLike, y: ArrayLike) -> complex:
        """Complex-bilinear extension of the form."""
        return complex(np.asarray(x) @ self.form @ np.asarray(y))

    def hermitian(self, x: ArrayLike, y: ArrayLike) -> complex:
        """h0(x, y): linear in x, antilinear in y.

        Euclidean: g(x, conj y). Symplectic: -i omega(x, conj y).
        """
        value = self.bilinear(x, np.conj(y))
        return value if self.family is Family.EUCLIDEAN else -1j * value

    def coordinates(self, frame: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        """Matrix C with C[i, j] = h0(vectors[:, j], frame[:, i])."""
        products = frame.conj().T @ self.form.T @ vectors
        return products if self.family is Family.EUCLIDEAN else -1j * products

    def musical(self, x: ArrayLike) -> np.ndarray:
        """nu(x) = iota_x form, as a covector."""
        return self.form.T @ np.asarray(x)

    def inverse_musical(self, alpha: ArrayLike) -> np.ndarray:
        return np.linalg.solve(self.form.T, np.asarray(alpha))


@dataclass(frozen=True, eq=False)
class ComplexStructure:
    """Real 2n x 2n matrix with J^2 = -I."""

    J: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.J, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ShapeError(f"complex structure needs an even square matrix, got {m.shape}")
        residual = float(np.abs(m @ m + np.eye(m.shape[0])).max())
        if residual > 1e-8:
            raise CompatibilityError(f"J^2 + I residual {residual:.3e}")
        object.__setattr__(self, "J", m)

    @property
    def n(self) -> int:
        return self.J.shape[0] // 2

    def q_matrix(self, space: LinearPhaseSpace) -> np.ndarray:
        """Symmetric matrix of q_J(x, y) = omega(x, J y)."""
        s = space.form @ self.J
        return 0.5 * (s + s.T)

    def varpi_matrix(self, space: LinearPhaseSpace) -> np.ndarray:
        """Matrix of the two-form varpi_J(x, y) = g(J x, y)."""
        return self.J.T @ space.form

    def __neg__(self) -> ComplexStructure:
        return ComplexStructure(-self.J)


@dataclass(frozen=True, eq=False)
class UnitaryFrame:
    """h0-orthonormal basis e_1..e_n of V_J^{1,0}, stored as columns."""

    vectors: np.ndarray

    @property
    def full(self) -> np.ndarray:
        """[e_1..e_n, conj e_1..conj e_n]."""
        return np.column_stack([self.vectors, self.vectors.conj()])


@dataclass(frozen=True, eq=False)
class GraphChart:
    """V_J^{1,0} = span{e_i + sum_j Z[i, j] conj(e_j)} around the base J0."""

    space: LinearPhaseSpace
    base: ComplexStructure
    Z: np.ndarray


@dataclass
class CompatibilityReport:
    passed: bool
    square_residual: float
    form_residual: float
    positivity_margin: float
    witness: np.ndarray | None = field(default=None)


def projection_P(J: ComplexStructure) -> np.ndarray:
    """P_J = (I - iJ)/2, projection onto V^{1,0} along V^{0,1}."""
    return 0.5 * (np.eye(J.J.shape[0]) - 1j * J.J)


def check_compatibility(
    J: ComplexStructure, space: LinearPhaseSpace, threshold: float | None = None
) -> CompatibilityReport:
    if J.J.shape != space.form.shape:
        raise ShapeError("J and the space have different dimensions")
    tol = config.numerics.compatibility_threshold if threshold is None else threshold
    m = J.J
    square = float(np.abs(m @ m + np.eye(space.dim)).max())
    form_residual = float(np.abs(m.T @ space.form @ m - space.form).max())
    witness = None
    if space.family is Family.SYMPLECTIC:
        w, v = np.linalg.eigh(J.q_matrix(space))
        margin = float(w[0])
        if margin <= tol:
            witness = v[:, 0]
        passed = margin > tol
    else:
        margin = float(np.sign(pfaffian(m).real) * np.sign(pfaffian(standard_j(space.n)).real))
        passed = margin > 0
    loose = max(tol, 1e-9)
    passed = passed and square <= loose and form_residual <= loose
    return CompatibilityReport(passed, square, form_residual, margin, witness)


def require_compatible(J: ComplexStructure, space: LinearPhaseSpace) -> None:
    report = check_compatibility(J, space)
    if not report.passed:
        raise CompatibilityError(
            f"J not compatible: square {report.square_residual:.2e}, "
            f"form {report.form_residual:.2e}, margin {report.positivity_margin:.3g}"
        )


def unitary_frame(J: ComplexStructure, space: LinearPhaseSpace) -> UnitaryFrame:
    """Project the standard basis to V^{1,0} and orthonormalise in index order."""
    P = projection_P(J)
    accepted: list[np.ndarray] = []
    for k in range(space.dim):
        v = P[:, k].copy()
        for e in accepted:
            v = v - space.hermitian(v, e) * e
        norm2 = space.hermitian(v, v).real
        if norm2 > 1e-10:
            accepted.append(v / np.sqrt(norm2))
        if len(accepted) == space.n:
            break
    if len(accepted) != space.n:
        raise CompatibilityError("could not build a unitary frame; h0 is not definite on V^{1,0}")
    return UnitaryFrame(np.column_stack(accepted))


def complex_coordinates(frame: UnitaryFrame, space: LinearPhaseSpace, x: ArrayLike) -> np.ndarray:
    """z_i with x = sum z_i e_i + conj(z_i) conj(e_i) for real x."""
    return space.coordinates(frame.vectors, np.asarray(x, dtype=complex).reshape(-1, 1))[:, 0]


def _structure_from_holomorphic(W: np.ndarray) -> ComplexStructure:
    basis = np.column_stack([W, W.conj()])
    if np.linalg.cond(basis) > 1e12:
        raise ChartDomainError("holomorphic and antiholomorphic spans intersect")
    n = W.shape[1]
    P = W @ np.linalg.inv(basis)[:n, :]
    return ComplexStructure(np.real(1j * (2 * P - np.eye(2 * n))))


def chart_to_J(chart: GraphChart) -> ComplexStructure:
    frame = unitary_frame(chart.base, chart.space)
    W = frame.vectors + frame.vectors.conj() @ np.asarray(chart.Z, dtype=complex).T
    return _structure_from_holomorphic(W)


def graph_chart(J0: ComplexStructure, J: ComplexStructure, space: LinearPhaseSpace) -> GraphChart:
    s = J0.J + J.J
    if abs(np.linalg.det(0.5 * s)) < 1e-12:
        raise ChartDomainError("J0 + J is singular; J is outside the chart")
    frame = unitary_frame(J0, space)
    W = projection_P(J) @ frame.vectors
    coeffs = np.linalg.solve(frame.full, W)
    A, C = coeffs[: space.n], coeffs[space.n :]
    Z = (C @ np.linalg.inv(A)).T
    return GraphChart(space=space, base=J0, Z=Z)


def lie_algebra_element(space: LinearPhaseSpace, rng: np.random.Generator) -> np.ndarray:
    """Random element of sp(2n) or so(2n) with unit-scale entries."""
    a = rng.standard_normal((space.dim, space.dim))
    if space.family is Family.EUCLIDEAN:
        return 0.5 * (a - a.T)
    return space.form.T @ (0.5 * (a + a.T))


def random_compatible(
    space: LinearPhaseSpace, rng: np.random.Generator, scale: float = 1.0
) -> ComplexStructure:
    """k J0 k^{-1} with k = exp(scale * X), X random in the Lie algebra."""
    k = scipy.linalg.expm(scale * lie_algebra_element(space, rng))
    J0 = standard_j(space.n)
    J = k @ J0 @ np.linalg.inv(k)
    return ComplexStructure(J)
