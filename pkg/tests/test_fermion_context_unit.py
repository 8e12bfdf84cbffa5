"""Pre-quantum operators, the polarised subspaces H_J and their inner products."""

from __future__ import annotations

import numpy as np
import pytest

from lib.errors import CompatibilityError, ShapeError
from lib.fermion.context import FermionContext, principal_angles
from lib.geometry.phase_space import ComplexStructure, random_compatible
from lib.geometry.symm_space import GeodesicPath
from lib.grassmann.gaussians import bergman_kernel_in_frame, bergman_kernel_real, kernel_apply


@pytest.mark.parametrize("n", [1, 2, 3])
def test_annihilator_rank_is_two_to_the_n(n, rng):
    ctx = FermionContext.standard(n)
    assert ctx.annihilator_rank(ctx.space.base_j) == 2**n
    assert ctx.annihilator_rank(random_compatible(ctx.space, rng, 0.5)) == 2**n


def test_hilbert_subspace_is_orthonormal(fermion2, rng):
    J = random_compatible(fermion2.space, rng, 0.5)
    basis = fermion2.hilbert_subspace(J).basis
    assert basis.shape == (16, 4)
    assert np.allclose(basis.conj().T @ fermion2.gram @ basis, np.eye(4), atol=1e-10)


def test_hilbert_subspace_is_annihilated_by_antiholomorphic_derivatives(fermion2):
    J = fermion2.space.base_j
    sub = fermion2.hilbert_subspace(J)
    for i in range(2):
        op = fermion2.nabla(np.conj(sub.frame[:, i]))
        assert np.abs(op @ sub.basis).max() < 1e-12


def test_hilbert_subspace_is_cached(fermion2):
    J = fermion2.space.base_j
    assert fermion2.hilbert_subspace(J) is fermion2.hilbert_subspace(J)


def test_incompatible_structure_is_rejected():
    ctx = FermionContext.standard(1)
    with pytest.raises(CompatibilityError):
        ctx.hilbert_subspace(-ctx.space.base_j)


def test_nabla_and_clifford_anticommutators(fermion2, rng):
    """{nabla_x, nabla_y} = -g(x, y) and {x-hat, y-hat} = g(x, y)."""
    eye = np.eye(fermion2.dim)
    x, y = rng.standard_normal(4), rng.standard_normal(4)
    nx, ny = fermion2.nabla(x), fermion2.nabla(y)
    assert np.allclose(nx @ ny + ny @ nx, -(x @ y) * eye, atol=1e-12)
    cx, cy = fermion2.clifford(x), fermion2.clifford(y)
    assert np.allclose(cx @ cy + cy @ cx, (x @ y) * eye, atol=1e-12)


def test_adjoint_of_wedge_is_interior(fermion2):
    """With the g/2 Hodge form, (xi^a ^)^dagger = 2 iota_{E_a}."""
    for a in range(4):
        assert np.allclose(fermion2.adjoint(fermion2.wedge[a]), 2 * fermion2.interior[a])


def test_hodge_pairing_matches_gram_form(fermion2, rng):
    psi = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    phi = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    assert fermion2.inner_product_hodge(psi, phi) == pytest.approx(fermion2.inner(psi, phi))


def test_berezin_pairing_matches_inner_product_on_h_j():
    ctx = FermionContext.standard(1)
    basis = ctx.hilbert_subspace(ctx.space.base_j).basis
    for i in range(2):
        for j in range(2):
            value = ctx.inner_product_berezin(ctx.space.base_j, basis[:, i], basis[:, j])
            assert value == pytest.approx(1.0 if i == j else 0.0, abs=1e-12)


def test_berezin_pairing_normalises_vacuum(fermion2, rng):
    J = random_compatible(fermion2.space, rng, 0.5)
    vacuum = fermion2.vacuum_factor(J).coeffs
    assert fermion2.inner_product_berezin(J, vacuum, vacuum) == pytest.approx(1.0)


def test_projection_is_idempotent(fermion2, rng):
    J = random_compatible(fermion2.space, rng, 0.5)
    psi = rng.standard_normal(16) + 1j * rng.standard_normal(16)
    once = fermion2.project(J, psi)
    assert np.allclose(fermion2.project(J, once), once, atol=1e-12)


@pytest.mark.parametrize("builder", [bergman_kernel_real, bergman_kernel_in_frame])
def test_bergman_kernel_reproduces_projection(builder, rng):
    ctx = FermionContext.standard(1)
    J = random_compatible(ctx.space, rng, 0.5)
    kernel = builder(J, ctx.space)
    psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    image = kernel_apply(kernel, ctx.element(psi), ctx.space)
    assert np.allclose(image.coeffs, ctx.project(J, psi), atol=1e-12)


def test_principal_angles_equal_geodesic_parameter(fermion2):
    """The transported subspace makes the same angle b with every direction of H_{J0}."""
    path = GeodesicPath(fermion2.space, fermion2.space.base_j, np.eye(2, dtype=complex), (0.6,))
    angles = principal_angles(fermion2, path.base, path.end)
    assert np.allclose(angles, 0.6, atol=1e-8)
    same = principal_angles(fermion2, path.base, path.base)
    assert np.allclose(same, 0.0, atol=1e-6)


def test_context_requires_euclidean_space(symplectic1):
    with pytest.raises(ValueError):
        FermionContext(symplectic1)


def test_structure_shape_mismatch():
    ctx = FermionContext.standard(1)
    with pytest.raises(ShapeError):
        ctx.hilbert_subspace(ComplexStructure(np.kron(np.eye(2), [[0.0, -1.0], [1.0, 0.0]])))
