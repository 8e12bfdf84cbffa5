"""Principal matrix logarithms and continuous root branches along paths."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from lib.errors import BranchCutError, BranchResolutionError, DegeneratePairingError, ShapeError
from lib.utils.config import config

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BranchTrackedScalar:
    """A root followed continuously along a sampled path."""

    value: complex
    history: tuple[complex, ...]
    order: int = 1


def principal_log(a: ArrayLike, tolerance: float = 1e-12) -> np.ndarray:
    """Logarithm with eigenvalue imaginary parts in (-pi, pi).

    Real input yields a real result.
    """
    m = np.array(a)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"principal_log needs a square matrix, got shape {m.shape}")
    eigenvalues = np.linalg.eigvals(m)
    scale = max(1.0, float(np.abs(eigenvalues).max(initial=0.0)))
    for lam in eigenvalues:
        if abs(lam) <= tolerance * scale:
            raise BranchCutError("matrix is singular; logarithm undefined")
        if lam.real < 0 and abs(lam.imag) <= 1e-9 * abs(lam):
            raise BranchCutError(f"eigenvalue {complex(lam):.6g} lies on the negative real axis")

    log = scipy.linalg.logm(m)
    if np.isrealobj(m):
        if np.abs(np.imag(log)).max(initial=0.0) > 1e-8 * max(1.0, np.abs(log).max()):
            raise BranchCutError("real matrix has no real principal logarithm")
        return np.real(log)
    return np.asarray(log, dtype=complex)


def tracked_root(
    path_of_values: Sequence[complex],
    order: int,
    continuity_ratio: float | None = None,
    degenerate_below: float = 1e-300,
) -> BranchTrackedScalar:
    """Continuous branch of the order-th root along sampled values.

    The branch starts at the principal root of the first sample (the positive
    real root when that sample is positive).
    """
    if order not in (1, 2, 4):
        raise ValueError(f"unsupported root order {order}")
    values = [complex(v) for v in path_of_values]
    if not values:
        raise ValueError("tracked_root needs at least one sample")
    ratio = config.numerics.continuity_ratio if continuity_ratio is None else continuity_ratio

    turns = np.exp(2j * np.pi * np.arange(order) / order)
    roots: list[complex] = []
    for index, v in enumerate(values):
        if abs(v) <= degenerate_below:
            raise DegeneratePairingError(f"sample {index} vanishes on the path")
        principal = complex(v ** (1.0 / order))
        if not roots:
            roots.append(principal)
            continue
        previous = values[index - 1]
        if abs(v - previous) >= ratio * abs(previous):
            raise BranchResolutionError(
                f"jump between samples {index - 1} and {index} exceeds continuity threshold",
                index=index,
            )
        candidates = principal * turns
        roots.append(complex(candidates[int(np.argmin(np.abs(candidates - roots[-1])))]))

    logger.debug("tracked %d samples, order %d, final root %s", len(values), order, roots[-1])
    return BranchTrackedScalar(value=roots[-1], history=tuple(roots), order=order)
