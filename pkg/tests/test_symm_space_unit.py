"""Geodesics, the cut locus, Kahler data and half-form transport."""

from __future__ import annotations

import numpy as np
import pytest

from lib.errors import CutLocusError, DegeneratePairingError, NotTangentError, ShapeError
from lib.geometry.half_forms import (
    half_form_transport,
    moving_frame,
    v_bundle_transport,
    v_bundle_transport_ode,
)
from lib.geometry.phase_space import (
    Family,
    LinearPhaseSpace,
    check_compatibility,
    random_compatible,
    unitary_frame,
)
from lib.geometry.symm_space import (
    GeodesicPath,
    check_tangent,
    complex_direction,
    curvature_2form,
    cut_locus_det,
    geodesic_between,
    geodesic_length,
    geodesic_sample,
    kahler_eval,
    sub_path,
    triangle_curvature_integral,
)


def _rotation_path(space: LinearPhaseSpace, b: float) -> GeodesicPath:
    return GeodesicPath(space, space.base_j, np.eye(space.n, dtype=complex), (b,))


@pytest.mark.parametrize("b", [0.2, 0.9, 1.4])
def test_cut_locus_det_is_cos_fourth(euclidean2, b):
    """Along the basic euclidean geodesic det((J0 + J_t)/2) = cos^4(bt)."""
    path = _rotation_path(euclidean2, b)
    for t in (0.0, 0.25, 0.5, 1.0):
        det = cut_locus_det(path.base, geodesic_sample(path, t))
        assert det == pytest.approx(np.cos(b * t) ** 4, abs=1e-12)


def test_geodesic_samples_stay_compatible(euclidean2):
    path = _rotation_path(euclidean2, 1.1)
    for t in np.linspace(0.0, 1.0, 5):
        assert check_compatibility(geodesic_sample(path, float(t)), euclidean2).passed


@pytest.mark.parametrize("family", list(Family))
def test_geodesic_between_reaches_endpoint(family, rng):
    space = LinearPhaseSpace.standard(2, family)
    J = random_compatible(space, rng, scale=0.5)
    path = geodesic_between(space.base_j, J, space)
    assert np.allclose(path.end.J, J.J, atol=1e-9)
    assert np.allclose(geodesic_sample(path, 0.0).J, space.base_j.J, atol=1e-12)


def test_geodesic_between_recovers_normal_form(euclidean2):
    end = _rotation_path(euclidean2, 0.8).end
    path = geodesic_between(euclidean2.base_j, end, euclidean2)
    assert path.b == pytest.approx((0.8,), abs=1e-9)


def test_cut_locus_point_has_no_geodesic(euclidean2):
    end = _rotation_path(euclidean2, np.pi / 2).end
    with pytest.raises(CutLocusError) as exc_info:
        geodesic_between(euclidean2.base_j, end, euclidean2)
    assert abs(exc_info.value.det) < 1e-8


def test_geodesic_path_validates_parameters(euclidean2):
    with pytest.raises(ShapeError):
        GeodesicPath(euclidean2, euclidean2.base_j, np.eye(2, dtype=complex), (-0.1,))
    with pytest.raises(ShapeError):
        GeodesicPath(euclidean2, euclidean2.base_j, np.eye(2, dtype=complex), (0.1, 0.2))


def test_sub_path_joins_intermediate_points(symplectic1):
    path = GeodesicPath(symplectic1, symplectic1.base_j, np.eye(1, dtype=complex), (0.6,))
    piece = sub_path(path, 0.25, 0.75)
    assert np.allclose(piece.base.J, geodesic_sample(path, 0.25).J, atol=1e-12)
    assert np.allclose(piece.end.J, geodesic_sample(path, 0.75).J, atol=1e-9)


def test_check_tangent_rejects_non_tangent(euclidean2):
    with pytest.raises(NotTangentError):
        check_tangent(euclidean2.base_j, np.eye(4), euclidean2)


@pytest.mark.parametrize("family", list(Family))
def test_kahler_form_compatible_with_metric(family, rng):
    """sigma(X, IX) = eta(X, X) > 0 for tangent X."""
    space = LinearPhaseSpace.standard(2, family)
    path = geodesic_between(space.base_j, random_compatible(space, rng, 0.5), space)
    x = path.velocity(0.0)
    eta = kahler_eval(space.base_j, x, x, space).eta
    sigma = kahler_eval(space.base_j, x, complex_direction(space.base_j, x), space).sigma
    assert eta > 0
    assert sigma == pytest.approx(eta, rel=1e-10)


def test_curvature_two_form_is_sigma_over_two_i(rng):
    space = LinearPhaseSpace.standard(2, Family.SYMPLECTIC)
    J = space.base_j
    x = geodesic_between(J, random_compatible(space, rng, 0.4), space).velocity(0.0)
    y = geodesic_between(J, random_compatible(space, rng, 0.4), space).velocity(0.0)
    sigma = kahler_eval(J, x, y, space).sigma
    assert curvature_2form(J, x, y, space.family) == pytest.approx(sigma / 2j, abs=1e-12)


def test_geodesic_length_scales_with_parameter(symplectic1):
    short = GeodesicPath(symplectic1, symplectic1.base_j, np.eye(1, dtype=complex), (0.2,))
    long = GeodesicPath(symplectic1, symplectic1.base_j, np.eye(1, dtype=complex), (0.4,))
    assert geodesic_length(long) == pytest.approx(2 * geodesic_length(short), rel=1e-10)


def test_degenerate_triangle_has_no_curvature(euclidean2):
    J = euclidean2.base_j
    assert triangle_curvature_integral((J, J, J), euclidean2, nodes=4) == pytest.approx(0.0)


@pytest.mark.parametrize("family", list(Family))
def test_v_bundle_transport_matches_ode(family):
    space = LinearPhaseSpace.standard(2, family)
    b = (0.5,) if family is Family.EUCLIDEAN else (0.5, 0.3)
    U = np.array([[np.cos(0.3), -np.sin(0.3)], [np.sin(0.3), np.cos(0.3)]], dtype=complex)
    path = GeodesicPath(space, space.base_j, U, b)
    closed = v_bundle_transport(path)
    assert np.allclose(closed.conj().T @ closed, np.eye(2), atol=1e-10)
    assert np.allclose(closed, v_bundle_transport_ode(path), atol=1e-8)


def test_moving_frame_is_holomorphic_at_each_time(euclidean2):
    path = _rotation_path(euclidean2, 0.7)
    frame = moving_frame(path, 0.6).vectors
    J = geodesic_sample(path, 0.6)
    assert np.allclose(J.J @ frame, 1j * frame, atol=1e-10)
    assert np.allclose(euclidean2.coordinates(frame, frame), np.eye(2), atol=1e-10)


@pytest.mark.parametrize("b", [0.3, 0.8, 1.2])
def test_euclidean_half_form_pairing_is_cos(euclidean2, b):
    half = half_form_transport(_rotation_path(euclidean2, b))
    assert half.direction == "K^-1/2"
    assert half.pairing.value == pytest.approx(np.cos(b), abs=1e-9)
    assert half.normalization == pytest.approx(np.cos(b), abs=1e-9)


def test_half_form_pairing_degenerates_on_cut_locus(euclidean2):
    with pytest.raises(DegeneratePairingError) as exc_info:
        half_form_transport(_rotation_path(euclidean2, np.pi / 2))
    assert exc_info.value.t > 0.99


def test_symplectic_half_form_direction(symplectic1):
    path = GeodesicPath(symplectic1, symplectic1.base_j, np.eye(1, dtype=complex), (0.5,))
    half = half_form_transport(path)
    assert half.direction == "K^1/2"
    assert half.normalization == pytest.approx(np.cosh(0.5) ** -0.5, rel=1e-10)
    frame = unitary_frame(path.base, symplectic1)
    assert frame.vectors.shape == (2, 1)
