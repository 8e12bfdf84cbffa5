"""Congruence normal forms of complex symmetric and antisymmetric matrices.

Both routines return a unitary U with A = U D U^T. Columns are produced in
order of decreasing singular value; ties keep the order numpy's eigh returns.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from lib.errors import ShapeError, SkewSymmetryError


def _complete(columns: list[np.ndarray], n: int) -> np.ndarray:
    if not columns:
        return np.eye(n, dtype=complex)
    found = np.column_stack(columns)
    if found.shape[1] == n:
        return found
    rest = scipy.linalg.null_space(found.conj().T)
    return np.column_stack([found, rest])


def takagi(a: ArrayLike, tolerance: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """A = U diag(s) U^T for complex symmetric A, s >= 0 descending."""
    m = np.array(a, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeError(f"takagi needs a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.T).max(initial=0.0) > 1e-9 * scale:
        raise SkewSymmetryError("takagi needs a symmetric matrix")

    residual = 0.5 * (m + m.T)
    columns: list[np.ndarray] = []
    values: list[float] = []
    while len(columns) < n:
        w, v = np.linalg.eigh(residual @ residual.conj().T)
        if w[-1] <= (tolerance * scale) ** 2:
            break
        s = float(np.sqrt(w[-1]))
        x = v[:, -1]
        y = residual @ x.conj() + s * x
        u = 1j * x if np.linalg.norm(y) < 1e-8 else y / np.linalg.norm(y)
        columns.append(u)
        values.append(s)
        residual = residual - s * np.outer(u, u)

    s_all = np.zeros(n)
    s_all[: len(values)] = values
    return _complete(columns, n), s_all


def youla(a: ArrayLike, tolerance: float = 1e-12) -> tuple[np.ndarray, np.ndarray]:
    """A = U B U^T for complex antisymmetric A.

    B is block diagonal with blocks [[0, b_k], [-b_k, 0]] in the leading
    coordinates (b_k > 0 descending) and zero elsewhere. Returns U and the b_k.
    """
    m = np.array(a, dtype=complex)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ShapeError(f"youla needs a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m + m.T).max(initial=0.0) > 1e-9 * scale:
        raise SkewSymmetryError("youla needs an antisymmetric matrix")

    residual = 0.5 * (m - m.T)
    columns: list[np.ndarray] = []
    values: list[float] = []
    while len(columns) + 2 <= n:
        w, v = np.linalg.eigh(residual @ residual.conj().T)
        if w[-1] <= (tolerance * scale) ** 2:
            break
        b = float(np.sqrt(w[-1]))
        u1 = v[:, -1]
        u2 = -(residual @ u1.conj()) / b
        u2 = u2 / np.linalg.norm(u2)
        columns.extend([u1, u2])
        values.append(b)
        residual = residual - b * (np.outer(u1, u2) - np.outer(u2, u1))

    return _complete(columns, n), np.array(values)


def youla_block(b_values: ArrayLike, n: int) -> np.ndarray:
    """Block-diagonal normal form matrix for the given b's."""
    block = np.zeros((n, n))
    for k, b in enumerate(np.asarray(b_values, dtype=float)):
        block[2 * k, 2 * k + 1] = b
        block[2 * k + 1, 2 * k] = -b
    return block
