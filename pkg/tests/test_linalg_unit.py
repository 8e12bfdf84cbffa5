"""Pfaffians, congruence normal forms, principal logarithms and tracked roots."""

from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lib.errors import BranchCutError, BranchResolutionError, ShapeError, SkewSymmetryError
from lib.linalg import (
    pfaffian,
    pfaffian_expansion,
    principal_log,
    takagi,
    tracked_root,
    youla,
    youla_block,
)


def _random_skew(seed: int, dim: int, complex_entries: bool = True) -> np.ndarray:
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((dim, dim))
    if complex_entries:
        a = a + 1j * rng.standard_normal((dim, dim))
    return a - a.T


def test_pfaffian_two_by_two_convention():
    """Pf([[0, b], [-b, 0]]) = b."""
    assert pfaffian([[0.0, 2.5], [-2.5, 0.0]]) == pytest.approx(2.5)
    assert pfaffian(np.zeros((0, 0))) == 1.0


def test_pfaffian_of_standard_block_sum():
    """Block sum of unit blocks has Pfaffian one; swapping one block flips the sign."""
    a = youla_block([1.0, 1.0, 1.0], 6)
    assert pfaffian(a) == pytest.approx(1.0)
    a[[0, 1]] = a[[1, 0]]
    a[:, [0, 1]] = a[:, [1, 0]]
    assert pfaffian(a) == pytest.approx(-1.0)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000), half=st.integers(min_value=1, max_value=4))
def test_pfaffian_matches_expansion_and_determinant(seed: int, half: int):
    """Householder Pfaffian agrees with row expansion and squares to the determinant."""
    a = _random_skew(seed, 2 * half)
    pf = pfaffian(a)
    assert pf == pytest.approx(pfaffian_expansion(a), rel=1e-9, abs=1e-9)
    assert pf**2 == pytest.approx(np.linalg.det(a), rel=1e-8, abs=1e-8)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=10_000))
def test_pfaffian_congruence_rule(seed: int):
    """Pf(B A B^T) = det(B) Pf(A)."""
    rng = np.random.default_rng(seed)
    a = _random_skew(seed, 4)
    b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    assert pfaffian(b @ a @ b.T) == pytest.approx(
        np.linalg.det(b) * pfaffian(a), rel=1e-8, abs=1e-8
    )


def test_pfaffian_rejects_bad_input():
    with pytest.raises(ShapeError):
        pfaffian(np.zeros((3, 3)))
    with pytest.raises(ShapeError):
        pfaffian(np.zeros((2, 4)))
    with pytest.raises(SkewSymmetryError):
        pfaffian([[0.0, 1.0], [1.0, 0.0]])


def test_expansion_is_limited_to_small_matrices():
    with pytest.raises(ShapeError):
        pfaffian_expansion(np.zeros((10, 10)))


def test_takagi_reconstructs_symmetric_matrix(rng):
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    a = a + a.T
    u, s = takagi(a)
    assert np.allclose(u.conj().T @ u, np.eye(3), atol=1e-10)
    assert np.all(np.diff(s) <= 1e-12)
    assert np.allclose(u @ np.diag(s) @ u.T, a, atol=1e-9)


def test_youla_reconstructs_antisymmetric_matrix(rng):
    a = _random_skew(7, 4)
    u, b = youla(a)
    assert np.allclose(u.conj().T @ u, np.eye(4), atol=1e-10)
    assert len(b) == 2 and b[0] >= b[1] > 0
    assert np.allclose(u @ youla_block(b, 4) @ u.T, a, atol=1e-9)


def test_youla_rejects_symmetric_input():
    with pytest.raises(SkewSymmetryError):
        youla(np.eye(2))


def test_principal_log_of_rotation_is_real():
    theta = 0.7
    rotation = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    log = principal_log(rotation)
    assert np.isrealobj(log)
    assert np.allclose(log, [[0.0, -theta], [theta, 0.0]], atol=1e-12)


def test_principal_log_refuses_negative_axis():
    with pytest.raises(BranchCutError):
        principal_log(-np.eye(2))
    with pytest.raises(BranchCutError):
        principal_log(np.zeros((2, 2)))


def test_tracked_root_follows_winding():
    """Square root of e^{i phi} continued once around the circle ends at -1."""
    values = np.exp(2j * np.pi * np.arange(65) / 64)
    root = tracked_root(values, 2)
    assert root.value == pytest.approx(-1.0, abs=1e-12)
    assert root.history[0] == pytest.approx(1.0)
    assert len(root.history) == 65


@pytest.mark.parametrize(
    ("centre", "turns", "expected_sign"),
    [
        (0.5, 1, -1.0),
        (3.0, 1, 1.0),
        (0.0, 2, 1.0),
    ],
)
def test_tracked_root_on_closed_loops(centre, turns, expected_sign):
    """The square root flips sign exactly when the loop winds the origin an odd number of times."""
    angles = 2 * np.pi * turns * np.arange(256 * turns + 1) / (256 * turns)
    radius = 2.0 if centre else 1.0
    values = centre + radius * np.exp(1j * angles)
    root = tracked_root(values, 2)
    start = np.sqrt(centre + radius)
    assert root.history[0] == pytest.approx(start)
    assert root.value == pytest.approx(expected_sign * start, abs=1e-10)
    steps = np.abs(np.diff(np.array(root.history)))
    assert steps.max() < 0.1


def test_fourth_root_around_the_circle_ends_at_i():
    values = np.exp(2j * np.pi * np.arange(129) / 128)
    assert tracked_root(values, 4).value == pytest.approx(1j, abs=1e-12)


def test_tracked_root_starts_on_positive_root():
    root = tracked_root([4.0, 4.1, 4.2], 2)
    assert root.history[0] == pytest.approx(2.0)
    assert root.value.real > 0


def test_tracked_root_reports_discontinuity_index():
    with pytest.raises(BranchResolutionError) as exc_info:
        tracked_root([1.0, 1.1, 10.0], 2)
    assert exc_info.value.index == 2


def test_tracked_root_rejects_unsupported_order():
    with pytest.raises(ValueError):
        tracked_root([1.0], 3)
