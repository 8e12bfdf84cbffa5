"""Parallel transport of fermionic states: Bogoliubov, ODE, kernel and coherent forms."""

from __future__ import annotations

import numpy as np
import pytest

from lib.errors import CutLocusError
from lib.fermion import (
    FermionContext,
    Provenance,
    corrected_transport,
    holonomy,
    kernel_transport,
    transport_bogoliubov,
    transport_coherent,
)
from lib.fermion.connection import (
    connection_operator,
    defining_residual,
    require_off_cut_locus,
    step_count,
    transport_ode,
)
from lib.fermion.transport import (
    coherent_transport_bogoliubov,
    divergence_profile,
    first_order_check,
    transport_ode_operator,
    two_mode_display_path,
    two_mode_display_state,
)
from lib.geometry.phase_space import random_compatible
from lib.geometry.symm_space import GeodesicPath, cut_locus_det


def _unitary(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _path(ctx: FermionContext, b: float, seed: int = 3) -> GeodesicPath:
    return GeodesicPath(ctx.space, ctx.space.base_j, _unitary(seed), (b,))


def test_constant_path_transport_is_identity(fermion2):
    path = GeodesicPath.constant(fermion2.space, fermion2.space.base_j)
    op = transport_bogoliubov(fermion2, path)
    assert op.provenance is Provenance.BOGOLIUBOV
    assert np.allclose(op.matrix, np.eye(4), atol=1e-12)


@pytest.mark.parametrize("b", [0.3, 0.8, 1.2])
def test_bogoliubov_transport_is_unitary(fermion2, b):
    op = transport_bogoliubov(fermion2, _path(fermion2, b))
    assert op.scale == pytest.approx(1.0 / np.cos(b), rel=1e-10)
    assert op.unitarity_residual() < 1e-9


def test_bogoliubov_refuses_cut_locus(fermion2):
    with pytest.raises(CutLocusError):
        transport_bogoliubov(fermion2, _path(fermion2, np.pi / 2))


def test_kernel_transport_matches_bogoliubov(fermion2):
    path = _path(fermion2, 0.7)
    ambient = transport_bogoliubov(fermion2, path).ambient(fermion2)
    basis = fermion2.hilbert_subspace(path.base).basis
    for k in range(4):
        image = kernel_transport(fermion2, path, basis[:, k])
        assert np.allclose(image, ambient @ basis[:, k], atol=1e-9)


def test_connection_operator_keeps_states_in_the_family(fermion2):
    J = fermion2.space.base_j
    path = _path(fermion2, 0.5)
    dJ = path.velocity(0.0)
    basis = fermion2.hilbert_subspace(J).basis
    for k in range(4):
        assert defining_residual(fermion2, J, dJ, basis[:, k]) < 1e-10
    op = connection_operator(fermion2, J, dJ)
    assert op.shape == (16, 16)


def test_step_count_respects_minimum(fermion2):
    path = _path(fermion2, 0.5)
    assert step_count(path) == 200
    assert step_count(path, 25) == 25
    with pytest.raises(ValueError):
        step_count(path, 5)


@pytest.mark.slow
@pytest.mark.parametrize("b", [0.3, 1.2])
def test_ode_transport_matches_bogoliubov(fermion2, b):
    path = _path(fermion2, b)
    bog = transport_bogoliubov(fermion2, path)
    ode = transport_ode_operator(fermion2, path)
    assert ode.provenance is Provenance.ODE
    assert np.abs(bog.matrix - ode.matrix).max() < 1e-7


@pytest.mark.parametrize("b", [0.4, 1.0])
def test_coherent_closed_form_matches_projection(fermion2, b):
    path = _path(fermion2, b)
    closed = transport_coherent(fermion2, path)
    projected = coherent_transport_bogoliubov(fermion2, path)
    assert closed.max_deviation(projected) < 1e-9


def test_coherent_transport_solves_connection_to_first_order(fermion2):
    assert first_order_check(fermion2, _path(fermion2, 0.6)) < 1e-7


@pytest.mark.parametrize("b", [0.3, 1.0])
def test_two_mode_display_matches_transport(fermion2, b):
    state = two_mode_display_state(fermion2, b)
    moved = transport_coherent(fermion2, two_mode_display_path(fermion2, b))
    assert state.max_deviation(moved) < 1e-10


def test_two_mode_display_needs_two_modes():
    with pytest.raises(ValueError):
        two_mode_display_path(FermionContext.standard(1), 0.3)


def test_corrected_transport_scaling_cancels(fermion2):
    corrected = corrected_transport(fermion2, _path(fermion2, 0.9))
    assert corrected.scaling_product == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(corrected.paired.conj().T @ corrected.paired,
                       np.cos(0.9) ** 2 * np.eye(4), atol=1e-9)


def test_divergence_profile_near_cut_locus(fermion2):
    samples = divergence_profile(fermion2, [0.5, 1.5, np.pi / 2])
    assert samples[0].scale == pytest.approx(1.0 / np.cos(0.5), rel=1e-10)
    assert samples[1].scale > samples[0].scale
    assert samples[1].unitarity_residual < 1e-6
    assert samples[2].scale is None
    assert samples[2].unitarity_residual is None
    assert samples[2].projection_norm < 1e-6


def test_divergence_profile_needs_non_empty_cut_locus():
    with pytest.raises(ValueError):
        divergence_profile(FermionContext.standard(1), [0.5])


@pytest.mark.slow
def test_holonomy_is_a_phase(fermion2, rng):
    base = fermion2.space.base_j
    vertices = (
        base,
        random_compatible(fermion2.space, rng, 0.3),
        random_compatible(fermion2.space, rng, 0.3),
    )
    report = holonomy(fermion2, vertices, nodes=8)
    assert report.off_identity_residual < 1e-6
    assert np.allclose(np.abs(np.diag(report.corrected)), 1.0, atol=1e-6)


def test_ode_refuses_path_crossing_cut_locus(fermion2):
    """det((J0 + J_t)/2) = cos^4(pi t) vanishes at t = 1/2 but is 1 at the endpoint."""
    path = _path(fermion2, np.pi)
    assert cut_locus_det(path.base, path.end) == pytest.approx(1.0)
    with pytest.raises(CutLocusError) as exc_info:
        require_off_cut_locus(path)
    assert exc_info.value.det < 1e-8
    psi = fermion2.hilbert_subspace(path.base).basis[:, 0]
    with pytest.raises(CutLocusError):
        transport_ode(fermion2, path, psi)


def test_cut_locus_guard_returns_endpoint_det(fermion2):
    path = _path(fermion2, 0.6)
    assert require_off_cut_locus(path) == pytest.approx(np.cos(0.6) ** 4, rel=1e-10)


def _vertex(ctx: FermionContext, angle: float, b: float):
    u = np.diag([np.exp(1j * angle), 1.0])
    return GeodesicPath(ctx.space, ctx.space.base_j, u, (b,)).end


@pytest.mark.slow
def test_holonomy_phase_follows_curvature_and_orientation(fermion2):
    base = fermion2.space.base_j
    b, c = _vertex(fermion2, 0.0, 0.5), _vertex(fermion2, np.pi / 2, 0.5)
    forward = holonomy(fermion2, (base, b, c))
    backward = holonomy(fermion2, (base, c, b))
    assert abs(forward.curvature_phase) > 1e-3
    assert abs(np.exp(1j * forward.phase) - np.exp(1j * forward.curvature_phase)) < 1e-4
    assert backward.phase == pytest.approx(-forward.phase, abs=1e-8)
    assert backward.curvature_phase == pytest.approx(-forward.curvature_phase, abs=1e-6)
