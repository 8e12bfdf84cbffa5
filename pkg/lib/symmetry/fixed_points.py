"""Fixed complex structures of a circle action."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np

from lib.errors import AlgebraBoundError
from lib.geometry.phase_space import ComplexStructure, Family, LinearPhaseSpace
from lib.linalg import pfaffian
from lib.symmetry.actions import GroupAction, fixed_tangent_dim

logger = logging.getLogger(__name__)

MAX_ENUMERATION_N = 4


@dataclass(frozen=True, eq=False)
class FixedPointSet:
    points: tuple[ComplexStructure, ...]
    signs: tuple[tuple[int, ...], ...]
    continuum: bool
    tangent_dims: tuple[int, ...]
    candidates: tuple[tuple[int, ...], ...] = ()

    @property
    def count(self) -> int | None:
        return None if self.continuum else len(self.points)


def flipped_structure(space: LinearPhaseSpace, signs: tuple[int, ...]) -> ComplexStructure:
    """J0 with the plane (E_i, E_{n+i}) reversed where signs[i] = -1."""
    n = space.n
    d = np.diag(np.concatenate([np.asarray(signs, float), np.ones(n)]))
    return ComplexStructure(d @ space.base_j.J @ d)


def torus_fixed_points(action: GroupAction) -> FixedPointSet:
    """Enumerate sign flips of the weight planes, keeping the J0 orientation class.

    A candidate with fixed tangent directions means the fixed set is not
    discrete there; the result is then flagged as a continuum.
    """
    space = action.space
    if space.n > MAX_ENUMERATION_N:
        raise AlgebraBoundError(f"fixed point enumeration limited to n <= {MAX_ENUMERATION_N}")
    reference = np.sign(pfaffian(space.base_j.J).real)
    points: list[ComplexStructure] = []
    signs: list[tuple[int, ...]] = []
    dims: list[int] = []
    candidates: list[tuple[int, ...]] = []
    # a flipped plane is not omega-positive
    choices = (1, -1) if space.family is Family.EUCLIDEAN else (1,)
    for s in itertools.product(choices, repeat=space.n):
        J = flipped_structure(space, s)
        if np.sign(pfaffian(J.J).real) != reference:
            continue
        dim = fixed_tangent_dim(action, J)
        dims.append(dim)
        candidates.append(s)
        if dim == 0:
            points.append(J)
            signs.append(s)
    continuum = any(d > 0 for d in dims)
    logger.info(
        "torus weights %s: %d candidates, continuum=%s",
        action.weights,
        len(dims),
        continuum,
    )
    return FixedPointSet(
        tuple(points), tuple(signs), continuum, tuple(dims), tuple(candidates)
    )
