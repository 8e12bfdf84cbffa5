"""Gaussian states c exp[lambda(x) + Q(x, x)/2 - q_J(x)/4] and their transport.

Integrals are taken against tilde eps_omega = d^{2n}x / (2 pi)^n, under which
exp(-x^T A x / 2 + b^T x) integrates to det(A)^{-1/2} exp(b^T A^{-1} b / 2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import QuantLabError
from lib.geometry.half_forms import half_form_transport
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    projection_P,
    unitary_frame,
)
from lib.geometry.symm_space import GeodesicPath, cut_locus_det

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GaussianState:
    space: LinearPhaseSpace
    structure: ComplexStructure
    amplitude: complex
    linear: np.ndarray
    quadratic: np.ndarray

    @classmethod
    def vacuum(cls, space: LinearPhaseSpace, structure: ComplexStructure) -> GaussianState:
        dim = space.dim
        zero = np.zeros((dim, dim), complex)
        return cls(space, structure, 1.0 + 0.0j, np.zeros(dim, complex), zero)

    def __call__(self, points: ArrayLike) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        s = self.structure.q_matrix(self.space)
        exponent = (
            pts @ self.linear
            + 0.5 * np.einsum("...a,ab,...b->...", pts, self.quadratic, pts)
            - 0.25 * np.einsum("...a,ab,...b->...", pts, s, pts)
        )
        return self.amplitude * np.exp(exponent)

    def scale(self, value: complex) -> GaussianState:
        return GaussianState(
            self.space, self.structure, self.amplitude * value, self.linear, self.quadratic
        )

    def is_holomorphic(self, tolerance: float = 1e-10) -> bool:
        """lambda and Q vanish on V^{0,1}_J."""
        e = unitary_frame(self.structure, self.space).vectors
        bar = np.conj(e)
        return bool(
            np.abs(self.linear @ bar).max(initial=0.0) <= tolerance
            and np.abs(self.quadratic @ bar).max(initial=0.0) <= tolerance
        )


def gaussian_integral(a: ArrayLike, b: ArrayLike) -> complex:
    """Integral of exp(-x^T A x / 2 + b^T x) against d^{2n}x / (2 pi)^n for Re A > 0."""
    mat = np.asarray(a, dtype=complex)
    mat = 0.5 * (mat + mat.T)
    vec = np.asarray(b, dtype=complex)
    if np.linalg.eigvalsh(mat.real).min() <= 0:
        raise QuantLabError("Gaussian integral needs a positive definite real part")
    eigenvalues = np.linalg.eigvals(mat)
    root = np.prod(np.sqrt(eigenvalues))
    return complex(np.exp(0.5 * vec @ np.linalg.solve(mat, vec)) / root)


def overlap(first: GaussianState, second: GaussianState) -> complex:
    """<first, second>, antilinear in the first argument."""
    s1 = first.structure.q_matrix(first.space)
    s2 = second.structure.q_matrix(second.space)
    a = 0.5 * (s1 + s2) - (np.conj(first.quadratic) + second.quadratic)
    b = np.conj(first.linear) + second.linear
    return np.conj(first.amplitude) * second.amplitude * gaussian_integral(a, b)


def coherent_state(
    space: LinearPhaseSpace, structure: ComplexStructure, alpha: ArrayLike
) -> GaussianState:
    """c_J^alpha(x) = exp[q_J(conj alpha, x) - q_J(x)/4] for alpha in V^{1,0}_J."""
    a = np.asarray(alpha, dtype=complex)
    s = structure.q_matrix(space)
    dim = space.dim
    zero = np.zeros((dim, dim), complex)
    return GaussianState(space, structure, 1.0 + 0.0j, s @ np.conj(a), zero)


def holomorphic_vector(
    space: LinearPhaseSpace, structure: ComplexStructure, coefficients: ArrayLike
) -> np.ndarray:
    """sum_i a_i e_i in the unitary frame of J."""
    e = unitary_frame(structure, space).vectors
    return e @ np.asarray(coefficients, dtype=complex)


def coherent_overlap(
    space: LinearPhaseSpace, structure: ComplexStructure, alpha: ArrayLike, beta: ArrayLike
) -> complex:
    """<c^alpha, c^beta> = exp(q_J(alpha, conj beta)); c^0 has unit norm."""
    return overlap(coherent_state(space, structure, alpha), coherent_state(space, structure, beta))


def coherent_overlap_closed_form(
    space: LinearPhaseSpace, structure: ComplexStructure, alpha: ArrayLike, beta: ArrayLike
) -> complex:
    s = structure.q_matrix(space)
    return complex(np.exp(np.asarray(alpha) @ s @ np.conj(np.asarray(beta))))


def kernel_matrix(space: LinearPhaseSpace, target: ComplexStructure) -> np.ndarray:
    """L with Bergman kernel exp[-q_1(x)/4 + y^T L x - q_1(y)/4], L = i Omega P_1."""
    return 1j * space.form @ projection_P(target)


def project_gaussian(state: GaussianState, target: ComplexStructure) -> GaussianState:
    """Orthogonal projection onto H_{J1}, by one Gaussian integral against the kernel."""
    space = state.space
    s0 = state.structure.q_matrix(space)
    s1 = target.q_matrix(space)
    a = 0.5 * (s0 + s1) - state.quadratic
    a = 0.5 * (a + a.T)
    kernel = kernel_matrix(space, target)
    a_inv = np.linalg.inv(a)
    amplitude = state.amplitude * gaussian_integral(a, state.linear)
    linear = kernel.T @ a_inv @ state.linear
    quadratic = kernel.T @ a_inv @ kernel
    return GaussianState(space, target, amplitude, linear, 0.5 * (quadratic + quadratic.T))


def transport_gaussian(state: GaussianState, path: GeodesicPath) -> GaussianState:
    """det((J0 + J1)/2)^{1/4} times the projection onto H_{J1}."""
    target = path.end
    det = cut_locus_det(state.structure, target)
    return project_gaussian(state, target).scale(det**0.25)


def transport_loop(state: GaussianState, legs: list[GeodesicPath]) -> GaussianState:
    for leg in legs:
        state = transport_gaussian(state, leg)
    return state


def bogoliubov_coherent(path: GeodesicPath, alpha: ArrayLike) -> GaussianState:
    """Closed form of the parallel transport of c^alpha_{J0} along a symplectic geodesic.

    det(K)^{-1/4} e^{-q_{J1}/4} exp[omega(x^{1,0} - conj alpha, K^{-1}(x^{1,0} - conj alpha))/2],
    K = (J0 + J1)/2, x^{1,0} = P_{J1} x.
    """
    space = path.space
    if space.family is not Family.SYMPLECTIC:
        raise ValueError("bogoliubov_coherent needs a symplectic path")
    target = path.end
    k = 0.5 * (path.base.J + target.J)
    det = float(np.linalg.det(k))
    n_mat = space.form @ np.linalg.inv(k)
    n_mat = 0.5 * (n_mat + n_mat.T)
    p1 = projection_P(target)
    abar = np.conj(np.asarray(alpha, dtype=complex))
    quadratic = p1.T @ n_mat @ p1
    linear = -p1.T @ n_mat @ abar
    amplitude = det**-0.25 * np.exp(0.5 * abar @ n_mat @ abar)
    return GaussianState(space, target, complex(amplitude), linear, 0.5 * (quadratic + quadratic.T))


def max_state_difference(first: GaussianState, second: GaussianState, points: ArrayLike) -> float:
    return float(np.abs(first(points) - second(points)).max())


@dataclass(frozen=True)
class HalfFormPairingReport:
    """Half-form data along a symplectic geodesic and its cancellation against H."""

    transport_value: complex
    pairing_value: complex
    normalization: float
    hilbert_scale: float
    det: float

    @property
    def scaling_product(self) -> float:
        return self.hilbert_scale * self.normalization


def half_form_pairing_boson(path: GeodesicPath) -> HalfFormPairingReport:
    """Transport in sqrt(K) and the pairing with the initial half-form, by tracked roots."""
    half = half_form_transport(path)
    det = cut_locus_det(path.base, path.end)
    return HalfFormPairingReport(
        transport_value=half.coefficient.value,
        pairing_value=half.pairing.value,
        normalization=half.normalization,
        hilbert_scale=det**0.25,
        det=det,
    )


def n1_display_values(b: float, a: complex, points: ArrayLike, swapped: bool = False) -> np.ndarray:
    """The printed n=1 coherent transport, optionally with sech and tanh exchanged.

    x is the complex coordinate x_1 + i x_2 and alpha is identified with a (1, -i).
    """
    pts = np.asarray(points, dtype=float)
    x = pts[..., 0] + 1j * pts[..., 1]
    sech, tanh = 1.0 / np.cosh(b), np.tanh(b)
    first, second = (sech, tanh) if swapped else (tanh, sech)
    abar = np.conj(a)
    exponent = abar * x * first + 0.5 * (abar**2 - x**2) * second - 0.25 * np.abs(x) ** 2
    return np.sqrt(sech) * np.exp(exponent)
