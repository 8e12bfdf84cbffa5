"""Compatible complex structures, unitary frames and graph charts."""

from __future__ import annotations

import numpy as np
import pytest

from lib.errors import ChartDomainError, CompatibilityError, ShapeError
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    chart_to_J,
    check_compatibility,
    complex_coordinates,
    graph_chart,
    projection_P,
    random_compatible,
    require_compatible,
    standard_j,
    standard_omega,
    unitary_frame,
)


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", [1, 2, 3])
def test_standard_structure_is_compatible(family, n):
    space = LinearPhaseSpace.standard(n, family)
    report = check_compatibility(space.base_j, space)
    assert report.passed
    assert report.square_residual == 0.0


def test_omega_tames_standard_structure(rng):
    """omega(x, J0 x) = |x|^2."""
    x = rng.standard_normal(4)
    assert x @ standard_omega(2) @ standard_j(2) @ x == pytest.approx(x @ x)


def test_orientation_sign_pattern():
    signs = [LinearPhaseSpace.standard(n, Family.EUCLIDEAN).orientation_sign for n in range(1, 6)]
    assert signs == [1, -1, -1, 1, 1]


@pytest.mark.parametrize("family", list(Family))
def test_random_structures_are_compatible(family, rng):
    space = LinearPhaseSpace.standard(2, family)
    for _ in range(5):
        J = random_compatible(space, rng, scale=0.6)
        assert check_compatibility(J, space).passed


def test_symplectic_negative_structure_fails_with_witness():
    space = LinearPhaseSpace.standard(1, Family.SYMPLECTIC)
    report = check_compatibility(-space.base_j, space)
    assert not report.passed
    assert report.witness is not None
    with pytest.raises(CompatibilityError):
        require_compatible(-space.base_j, space)


def test_euclidean_opposite_orientation_is_rejected():
    """-J0 is orthogonal but induces the other orientation for odd n."""
    space = LinearPhaseSpace.standard(1, Family.EUCLIDEAN)
    assert not check_compatibility(-space.base_j, space).passed


def test_complex_structure_validates_square():
    with pytest.raises(CompatibilityError):
        ComplexStructure(np.eye(2))
    with pytest.raises(ShapeError):
        ComplexStructure(np.zeros((3, 3)))


@pytest.mark.parametrize("family", list(Family))
def test_unitary_frame_is_orthonormal_and_holomorphic(family, rng):
    space = LinearPhaseSpace.standard(2, family)
    J = random_compatible(space, rng, scale=0.5)
    frame = unitary_frame(J, space).vectors
    assert np.allclose(space.coordinates(frame, frame), np.eye(2), atol=1e-10)
    assert np.allclose(J.J @ frame, 1j * frame, atol=1e-10)
    assert np.allclose(projection_P(J) @ frame, frame, atol=1e-10)


def test_standard_frame_vectors(euclidean2):
    frame = unitary_frame(euclidean2.base_j, euclidean2).vectors
    expected = np.array([[1, 0], [0, 1], [-1j, 0], [0, -1j]]) / np.sqrt(2)
    assert np.allclose(frame, expected)


def test_complex_coordinates_reconstruct_real_vector(euclidean2, rng):
    frame = unitary_frame(euclidean2.base_j, euclidean2)
    x = rng.standard_normal(4)
    z = complex_coordinates(frame, euclidean2, x)
    rebuilt = frame.vectors @ z + frame.vectors.conj() @ z.conj()
    assert np.allclose(rebuilt, x, atol=1e-12)


@pytest.mark.parametrize("family", list(Family))
def test_graph_chart_round_trip(family, rng):
    space = LinearPhaseSpace.standard(2, family)
    J = random_compatible(space, rng, scale=0.4)
    chart = graph_chart(space.base_j, J, space)
    assert np.allclose(chart_to_J(chart).J, J.J, atol=1e-9)


def test_graph_chart_at_base_is_zero(euclidean2):
    chart = graph_chart(euclidean2.base_j, euclidean2.base_j, euclidean2)
    assert np.allclose(chart.Z, 0.0)


def test_chart_excludes_opposite_structure():
    space = LinearPhaseSpace.standard(2, Family.EUCLIDEAN)
    with pytest.raises(ChartDomainError):
        graph_chart(space.base_j, -space.base_j, space)


def test_chart_symmetry_by_family(rng):
    """Z is symmetric for the Siegel disk and antisymmetric in the euclidean family."""
    space = LinearPhaseSpace.standard(2, Family.SYMPLECTIC)
    J = random_compatible(space, rng, scale=0.4)
    Z = graph_chart(space.base_j, J, space).Z
    assert np.allclose(Z, Z.T, atol=1e-9)
    assert np.linalg.norm(Z, 2) < 1.0
    euclid = LinearPhaseSpace.standard(2, Family.EUCLIDEAN)
    W = graph_chart(euclid.base_j, random_compatible(euclid, rng, 0.4), euclid).Z
    assert np.allclose(W, -W.T, atol=1e-9)
