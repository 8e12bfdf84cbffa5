"""Fermionic Gaussians, the Bergman kernel and coherent states.

Real algebras carry generators xi^1..xi^{2n} dual to the standard basis of R^{2n}.
Complex coordinates of a structure J are theta^i = sum_a conj(e_i)_a xi^a for the
unitary frame e of J, and theta-bar^i = sum_a (e_i)_a xi^a.
"""

from __future__ import annotations

import logging
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import AlgebraBoundError, ShapeError, SkewSymmetryError
from lib.geometry.phase_space import (
    ComplexStructure,
    LinearPhaseSpace,
    projection_P,
    unitary_frame,
)
from lib.grassmann.algebra import (
    GrassmannAlgebra,
    GrassmannElement,
    berezin_integral,
    embed,
    exp,
    full_integral,
    restrict,
    substitute_linear,
)
from lib.linalg import pfaffian
from lib.utils.config import config

logger = logging.getLogger(__name__)


def tilde_measure(n: int, orientation: int) -> complex:
    """Scalar of tilde eps_g = i^n eps_g relative to d xi^1 ... d xi^{2n}."""
    return (1j**n) * orientation


def fermionic_gaussian(alg: GrassmannAlgebra, a: ArrayLike, offset: int = 0) -> GrassmannElement:
    """exp((i/2) sum_ab A_ab theta^a theta^b) on the generators offset..offset+dim-1."""
    mat = np.asarray(a)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] % 2:
        raise ShapeError(f"expected an even square matrix, got {mat.shape}")
    if offset + mat.shape[0] > alg.size:
        raise ShapeError("matrix does not fit the algebra")
    scale = max(1.0, float(np.abs(mat).max(initial=0.0)))
    if np.abs(mat + mat.T).max(initial=0.0) > config.numerics.skew_tolerance * scale:
        raise SkewSymmetryError("fermionic Gaussian needs a skew matrix")
    return exp(alg.quadratic(0.5j * mat, offset=offset))


def gaussian_integral(a: ArrayLike, orientation: int = 1) -> complex:
    """Berezin integral of fermionic_gaussian(A) against tilde eps_g, evaluated exactly."""
    mat = np.asarray(a)
    alg = GrassmannAlgebra.real(mat.shape[0])
    n = mat.shape[0] // 2
    return full_integral(
        fermionic_gaussian(alg, mat), range(alg.size), tilde_measure(n, orientation)
    )


def oriented_pfaffian(a: ArrayLike, orientation: int = 1) -> complex:
    """Pfaffian relative to a volume form orientation * xi^1...xi^{2n}."""
    return orientation * pfaffian(np.asarray(a))


def frame_matrix(structure: ComplexStructure, space: LinearPhaseSpace) -> np.ndarray:
    """2n x n matrix whose columns are the unitary frame of J."""
    return unitary_frame(structure, space).vectors


def complex_to_real_images(structure: ComplexStructure, space: LinearPhaseSpace) -> np.ndarray:
    """Substitution matrix sending theta^i, theta-bar^i (paired order) to real generators."""
    e = frame_matrix(structure, space)
    n = space.n
    images = np.zeros((2 * n, 2 * n), dtype=complex)
    for i in range(n):
        images[:, 2 * i] = np.conj(e[:, i])
        images[:, 2 * i + 1] = e[:, i]
    return images


def bergman_kernel(n: int) -> GrassmannElement:
    """exp(sum theta^i chi-bar^i - 1/2 theta^i theta-bar^i - 1/2 chi^i chi-bar^i).

    Generators are theta^1, theta-bar^1, ..., then chi^1, chi-bar^1, ...; the kernel
    takes this form in the complex coordinates of any compatible J.
    """
    if 4 * n > config.numerics.max_generators:
        raise AlgebraBoundError(f"doubled complex algebra for n={n} exceeds the generator bound")
    alg = GrassmannAlgebra.concat(
        GrassmannAlgebra.complex_paired(n, "theta"), GrassmannAlgebra.complex_paired(n, "chi")
    )
    exponent = alg.zero()
    for i in range(n):
        th, thb = 2 * i, 2 * i + 1
        ch, chb = 2 * n + 2 * i, 2 * n + 2 * i + 1
        exponent = exponent + alg.generator(th) * alg.generator(chb)
        exponent = exponent - 0.5 * (alg.generator(th) * alg.generator(thb))
        exponent = exponent - 0.5 * (alg.generator(ch) * alg.generator(chb))
    return exp(exponent)


def bergman_kernel_real(structure: ComplexStructure, space: LinearPhaseSpace) -> GrassmannElement:
    """Kernel of the projection onto H_J in real generators (theta block then chi block).

    K = exp[(i/4) varpi_ab theta^a theta^b + P_ba theta^a chi^b + (i/4) varpi_ab chi^a chi^b]
    """
    dim = space.dim
    if 2 * dim > config.numerics.max_generators:
        raise AlgebraBoundError(f"doubled real algebra for n={space.n} exceeds the generator bound")
    alg = GrassmannAlgebra.concat(
        GrassmannAlgebra.real(dim, "theta"), GrassmannAlgebra.real(dim, "chi")
    )
    varpi = structure.varpi_matrix(space)
    p = projection_P(structure)
    cross = np.zeros((2 * dim, 2 * dim), dtype=complex)
    cross[:dim, dim:] = p.T
    exponent = (
        alg.quadratic(0.25j * varpi)
        + alg.quadratic(0.25j * varpi, offset=dim)
        + alg.quadratic(cross)
    )
    return exp(exponent)


def kernel_apply(
    kernel: GrassmannElement, psi: GrassmannElement, space: LinearPhaseSpace
) -> GrassmannElement:
    """Integrate K(theta, chi) psi(chi) over chi against tilde eps_g."""
    dim = space.dim
    alg = kernel.algebra
    lifted = embed(psi, alg, list(range(dim, 2 * dim)))
    measure = tilde_measure(space.n, space.orientation_sign)
    integrated = berezin_integral(kernel * lifted, range(dim, 2 * dim), measure)
    return restrict(integrated, psi.algebra, list(range(dim)))


@lru_cache(maxsize=None)
def coherent_algebra(n: int) -> GrassmannAlgebra:
    """Real generators xi^1..xi^{2n} followed by alpha^1, alpha-bar^1, ..., alpha^n, alpha-bar^n.

    One instance is shared per n, so coherent states built by separate calls combine.
    """
    if 4 * n > config.numerics.max_generators:
        raise AlgebraBoundError(f"coherent states for n={n} exceed the generator bound")
    return GrassmannAlgebra.concat(
        GrassmannAlgebra.real(2 * n, "xi"), GrassmannAlgebra.complex_paired(n, "alpha")
    )


def alpha_index(n: int, i: int, conjugate: bool = False) -> int:
    return 2 * n + 2 * i + (1 if conjugate else 0)


def coherent_state(
    structure: ComplexStructure, space: LinearPhaseSpace, alg: GrassmannAlgebra | None = None
) -> GrassmannElement:
    """c_J^alpha = exp[sum_i theta^i alpha-bar^i] e^{(i/2) varpi_J} in the coordinates of J."""
    n = space.n
    alg = coherent_algebra(n) if alg is None else alg
    e = frame_matrix(structure, space)
    vacuum = fermionic_gaussian(alg, 0.5 * structure.varpi_matrix(space))
    linear = alg.zero()
    for i in range(n):
        theta_i = alg.linear(np.conj(e[:, i]))
        linear = linear + theta_i * alg.generator(alpha_index(n, i, conjugate=True))
    return vacuum * exp(linear)


def bergman_kernel_in_frame(
    structure: ComplexStructure, space: LinearPhaseSpace
) -> GrassmannElement:
    """The complex-coordinate kernel pulled back to real generators by the frame of J."""
    n = space.n
    dim = space.dim
    images = complex_to_real_images(structure, space)
    doubled = np.zeros((2 * dim, 4 * n), dtype=complex)
    doubled[:dim, : 2 * n] = images
    doubled[dim:, 2 * n :] = images
    target = GrassmannAlgebra.concat(
        GrassmannAlgebra.real(dim, "theta"), GrassmannAlgebra.real(dim, "chi")
    )
    return substitute_linear(bergman_kernel(n), doubled, target)
