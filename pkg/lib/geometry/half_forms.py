"""Parallel transport in the tautological bundle V^{1,0} and its half-form roots."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from lib.errors import BranchResolutionError, DegeneratePairingError
from lib.geometry.phase_space import Family, UnitaryFrame, unitary_frame
from lib.geometry.symm_space import GeodesicPath, cut_locus_det, geodesic_sample
from lib.linalg import BranchTrackedScalar, tracked_root
from lib.utils.config import config

logger = logging.getLogger(__name__)


def moving_frame(path: GeodesicPath, t: float) -> UnitaryFrame:
    """g_t e_i: the parallel frame along the geodesic."""
    frame = unitary_frame(path.base, path.space)
    return UnitaryFrame(path.group_element(t) @ frame.vectors)


def midpoint_structure(path: GeodesicPath) -> np.ndarray:
    """J_{1/2} / i on V^{1,0}_{J0}, as the complex matrix acting on V^C."""
    t0, t1 = path.t_range
    return -1j * geodesic_sample(path, 0.5 * (t0 + t1)).J


def v_bundle_transport(path: GeodesicPath) -> np.ndarray:
    """Matrix of J_{1/2}/i from the unitary frame at J0 to the unitary frame at J1."""
    space = path.space
    f0 = unitary_frame(path.base, space)
    f1 = unitary_frame(path.end, space)
    images = midpoint_structure(path) @ f0.vectors
    return space.coordinates(f1.vectors, images)


def v_bundle_transport_ode(path: GeodesicPath, steps: int | None = None) -> np.ndarray:
    """RK4 oracle for ds/dt = (dP_t/dt) s, the projection connection on V^{1,0}."""
    space = path.space
    t0, t1 = path.t_range
    per_unit = config.integration.steps_per_unit
    count = steps or max(config.integration.min_steps, int(per_unit * (t1 - t0)))
    h = (t1 - t0) / count
    M = path.generator

    def rhs(t: float, s: np.ndarray) -> np.ndarray:
        J = geodesic_sample(path, t).J
        dP = -0.5j * (M @ J - J @ M)
        return dP @ s

    s = unitary_frame(path.base, space).vectors.astype(complex)
    t = t0
    for _ in range(count):
        k1 = rhs(t, s)
        k2 = rhs(t + h / 2, s + h / 2 * k1)
        k3 = rhs(t + h / 2, s + h / 2 * k2)
        k4 = rhs(t + h, s + h * k3)
        s = s + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
    return space.coordinates(unitary_frame(path.end, space).vectors, s)


@dataclass(frozen=True)
class HalfFormTransport:
    """Half-form transport along a geodesic.

    coefficient: tracked root of the transported top wedge in endpoint frames.
    pairing: tracked root of the cross pairing of the transported element with
    the initial one. normalization: det((J0 + J1)/2)^(-1/4) for K^{1/2},
    ^(+1/4) for K^{-1/2}.
    """

    direction: str
    coefficient: BranchTrackedScalar
    pairing: BranchTrackedScalar
    normalization: float
    t_samples: tuple[float, ...]


def _direction(path: GeodesicPath) -> str:
    return "K^1/2" if path.space.family is Family.SYMPLECTIC else "K^-1/2"


def _sample_half_forms(path: GeodesicPath, count: int) -> HalfFormTransport:
    space = path.space
    f0 = unitary_frame(path.base, space)
    t0, t1 = path.t_range
    ts = np.linspace(t0, t1, count + 1)
    symplectic = space.family is Family.SYMPLECTIC
    threshold = config.numerics.degeneracy_threshold

    coefficients: list[complex] = []
    pairings: list[complex] = []
    for t in ts:
        J_t = geodesic_sample(path, float(t))
        if not symplectic:
            det = cut_locus_det(path.base, J_t)
            if det <= threshold:
                raise DegeneratePairingError(
                    f"half-form pairing degenerates at t={t:.6g} (det={det:.3e})", t=float(t)
                )
        moved = path.group_element(float(t)) @ f0.vectors
        frame_t = unitary_frame(J_t, space)
        transported = np.linalg.det(space.coordinates(frame_t.vectors, moved))
        cross = np.conj(np.linalg.det(space.coordinates(f0.vectors, moved)))
        if abs(cross) <= threshold:
            raise DegeneratePairingError(f"cross pairing vanishes at t={t:.6g}", t=float(t))
        if symplectic:
            # K pairs dually to the top wedge of V^{1,0}.
            transported = 1.0 / transported
            cross = 1.0 / np.conj(cross)
        coefficients.append(complex(transported))
        pairings.append(complex(cross))

    det_end = cut_locus_det(path.base, path.end)
    power = -0.25 if symplectic else 0.25
    return HalfFormTransport(
        direction=_direction(path),
        coefficient=tracked_root(coefficients, 2),
        pairing=tracked_root(pairings, 2),
        normalization=float(det_end**power),
        t_samples=tuple(float(t) for t in ts),
    )


def half_form_transport(path: GeodesicPath, steps: int | None = None) -> HalfFormTransport:
    """Transport in K^{1/2} (symplectic) or K^{-1/2} (euclidean), refining on branch jumps."""
    t0, t1 = path.t_range
    per_unit = config.integration.steps_per_unit
    base = steps or max(config.integration.min_steps, int(per_unit * (t1 - t0)))
    attempt = 0
    for attempt_state in Retrying(
        stop=stop_after_attempt(config.retry.max_attempts),
        retry=retry_if_exception_type(BranchResolutionError),
        reraise=True,
    ):
        with attempt_state:
            count = base * 2**attempt
            attempt += 1
            result = _sample_half_forms(path, count)
    logger.debug("half-form transport %s: pairing %s", result.direction, result.pairing.value)
    return result
