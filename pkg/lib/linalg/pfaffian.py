"""Pfaffians of skew-symmetric matrices.

Convention: Pf([[0, b], [-b, 0]]) = b, and Pf(A)^2 = det(A).
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import ShapeError, SkewSymmetryError
from lib.utils.config import config


def _as_skew(a: ArrayLike, tolerance: float | None) -> np.ndarray:
    m = np.array(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"pfaffian needs a square matrix, got shape {m.shape}")
    if m.shape[0] % 2:
        raise ShapeError(f"pfaffian needs even dimension, got {m.shape[0]}")
    tol = config.numerics.skew_tolerance if tolerance is None else tolerance
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    residual = float(np.abs(m + m.T).max(initial=0.0))
    if residual > tol * scale:
        raise SkewSymmetryError(f"matrix is not skew-symmetric (|A + A^T| = {residual:.3e})")
    return 0.5 * (m - m.T)


def _householder(x: np.ndarray) -> tuple[np.ndarray, float, complex]:
    """Reflector v, tau with (I - tau v v^H) x = alpha e_1."""
    sigma = float(np.real(np.vdot(x[1:], x[1:])))
    if sigma == 0.0:
        return np.zeros_like(x), 0.0, complex(x[0])
    norm_x = np.sqrt(abs(x[0]) ** 2 + sigma)
    phase = np.exp(1j * np.angle(x[0])) if x[0] != 0 else 1.0
    v = x.copy()
    v[0] += phase * norm_x
    v /= np.linalg.norm(v)
    return v, 2.0, complex(-phase * norm_x)


def pfaffian(a: ArrayLike, tolerance: float | None = None) -> complex:
    """Pfaffian by Householder reduction to skew tridiagonal form."""
    m = _as_skew(a, tolerance)
    dim = m.shape[0]
    if dim == 0:
        return 1.0 + 0.0j

    value: complex = 1.0 + 0.0j
    for i in range(dim - 2):
        v, tau, alpha = _householder(m[i + 1 :, i])
        m[i + 1, i] = alpha
        m[i, i + 1] = -alpha
        m[i + 2 :, i] = 0
        m[i, i + 2 :] = 0
        w = tau * (m[i + 1 :, i + 1 :] @ v.conj())
        m[i + 1 :, i + 1 :] += np.outer(v, w) - np.outer(w, v)
        if tau != 0:
            # Each reflector has determinant -1.
            value *= 1 - tau
        if i % 2 == 0:
            value *= -alpha
    value *= m[dim - 2, dim - 1]
    return complex(value)


def pfaffian_expansion(a: ArrayLike, tolerance: float | None = None) -> complex:
    """Pfaffian by expansion along the first row. Exponential cost; small inputs only."""
    m = _as_skew(a, tolerance)
    if m.shape[0] > 8:
        raise ShapeError("expansion Pfaffian is limited to dimension 8")
    return _expand(m)


def _expand(m: np.ndarray) -> complex:
    dim = m.shape[0]
    if dim == 0:
        return 1.0 + 0.0j
    total = 0.0 + 0.0j
    for j in range(1, dim):
        if m[0, j] == 0:
            continue
        keep = [k for k in range(dim) if k not in (0, j)]
        sign = 1.0 if j % 2 == 1 else -1.0
        total += sign * m[0, j] * _expand(m[np.ix_(keep, keep)])
    return complex(total)
