"""Hodge stars on the exterior algebra of a euclidean space."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import ShapeError
from lib.grassmann.algebra import GrassmannAlgebra, GrassmannElement, substitute_linear


def _complement_sign(mask: int, size: int) -> int:
    """Sign s with theta^I theta^{I^c} = s theta^1...theta^N."""
    crossings = 0
    for j in range(size):
        if mask >> j & 1:
            # generators of the complement that sit before j
            crossings += j - bin(mask & ((1 << j) - 1)).count("1")
    return -1 if crossings % 2 else 1


def _standard_star(e: GrassmannElement, orientation: int) -> np.ndarray:
    alg = e.algebra
    full = alg.dim - 1
    out = np.zeros(alg.dim, dtype=complex)
    for m in np.flatnonzero(e.coeffs):
        out[full ^ int(m)] += e.coeffs[m] * _complement_sign(int(m), alg.size) * orientation
    return out


def hodge_star(
    e: GrassmannElement,
    metric: ArrayLike | None = None,
    orientation: int = 1,
    degree_base: float = 1.0,
) -> GrassmannElement:
    """Complex-linear Hodge star with alpha ^ *beta = <alpha, beta> vol.

    The generators are the dual basis of a space with the given metric (identity by
    default); vol is orientation times the metric volume form in generator order.
    degree_base b multiplies the degree-p component of the input by b^(p - N/2), so
    b = 2 gives the star of the metric g/2 used for the fermionic Hilbert space.
    """
    alg: GrassmannAlgebra = e.algebra
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    if degree_base != 1.0:
        # input degree p, before the star maps it to N - p
        factors = np.power(float(degree_base), alg.degrees - alg.size / 2.0)
        e = GrassmannElement(alg, e.coeffs * factors)
    if metric is None:
        out = _standard_star(e, orientation)
        result = GrassmannElement(alg, out)
    else:
        g = np.asarray(metric, dtype=float)
        if g.shape != (alg.size, alg.size):
            raise ShapeError(f"metric must be {alg.size}x{alg.size}, got {g.shape}")
        lower = np.linalg.cholesky(g)
        # orthonormal covectors are lower^T applied to the generators
        in_frame = substitute_linear(e, np.linalg.inv(lower))
        starred = GrassmannElement(alg, _standard_star(in_frame, orientation))
        result = substitute_linear(starred, lower)
    return result


def volume_form(alg: GrassmannAlgebra, orientation: int = 1) -> GrassmannElement:
    return hodge_star(alg.one(), orientation=orientation)
