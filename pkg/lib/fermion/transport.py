"""Closed-form, kernel and coherent-state parallel transport of fermionic states."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import CutLocusError
from lib.fermion.connection import (
    connection_operator,
    require_off_cut_locus,
    transport_ode,
)
from lib.fermion.context import FermionContext
from lib.geometry.half_forms import HalfFormTransport, half_form_transport
from lib.geometry.phase_space import (
    ComplexStructure,
    Family,
    LinearPhaseSpace,
    projection_P,
    unitary_frame,
)
from lib.geometry.symm_space import GeodesicPath, cut_locus_det, geodesic_sample
from lib.grassmann import GrassmannAlgebra, GrassmannElement, exp
from lib.grassmann.gaussians import (
    alpha_index,
    bergman_kernel_in_frame,
    coherent_algebra,
    coherent_state,
    fermionic_gaussian,
    kernel_apply,
)
from lib.utils.config import config

logger = logging.getLogger(__name__)


class Provenance(StrEnum):
    ODE = "ode"
    BOGOLIUBOV = "bogoliubov"
    KERNEL = "kernel"
    CORRECTED = "corrected"


@dataclass(frozen=True, eq=False)
class TransportOperator:
    """Matrix from the H_{J0} basis to the H_{J1} basis (columns are images)."""

    source: ComplexStructure
    target: ComplexStructure
    matrix: np.ndarray
    provenance: Provenance
    scale: float = 1.0

    def ambient(self, ctx: FermionContext) -> np.ndarray:
        b0 = ctx.hilbert_subspace(self.source).basis
        b1 = ctx.hilbert_subspace(self.target).basis
        return b1 @ self.matrix @ b0.conj().T @ ctx.gram

    def unitarity_residual(self) -> float:
        m = self.matrix
        return float(np.abs(m.conj().T @ m - np.eye(m.shape[1])).max())


def _check_path_positivity(path: GeodesicPath, samples: int = 16) -> None:
    t0, t1 = path.t_range
    for t in np.linspace(t0, t1, samples + 1)[1:]:
        det = cut_locus_det(path.base, geodesic_sample(path, float(t)))
        if det <= config.numerics.degeneracy_threshold:
            raise CutLocusError(f"path meets the cut locus of J0 near t={t:.4g}", det=det)


def cross_gram(
    ctx: FermionContext, source: ComplexStructure, target: ComplexStructure
) -> np.ndarray:
    b0 = ctx.hilbert_subspace(source).basis
    b1 = ctx.hilbert_subspace(target).basis
    return b1.conj().T @ ctx.gram @ b0


def transport_bogoliubov(ctx: FermionContext, path: GeodesicPath) -> TransportOperator:
    """det((J0 + J1)/2)^{-1/4} times the orthogonal projection H_{J0} -> H_{J1}."""
    det = require_off_cut_locus(path)
    _check_path_positivity(path)
    scale = det**-0.25
    target = path.end
    matrix = scale * cross_gram(ctx, path.base, target)
    return TransportOperator(path.base, target, matrix, Provenance.BOGOLIUBOV, scale)


def transport_ode_operator(
    ctx: FermionContext, path: GeodesicPath, steps: int | None = None
) -> TransportOperator:
    """transport_ode applied to every basis state of H_{J0}, read in the H_{J1} basis."""
    basis = ctx.hilbert_subspace(path.base).basis
    target = path.end
    images = np.column_stack(
        [transport_ode(ctx, path, basis[:, k], steps) for k in range(basis.shape[1])]
    )
    matrix = ctx.hilbert_subspace(target).basis.conj().T @ ctx.gram @ images
    return TransportOperator(path.base, target, matrix, Provenance.ODE)


def kernel_transport(ctx: FermionContext, path: GeodesicPath, psi: ArrayLike) -> np.ndarray:
    """det^{-1/4} times the Berezin integral of the J1 Bergman kernel against psi."""
    det = require_off_cut_locus(path)
    kernel = bergman_kernel_in_frame(path.end, ctx.space)
    image = kernel_apply(kernel, ctx.element(psi), ctx.space)
    return det**-0.25 * image.coeffs


def apply_extended(
    ctx: FermionContext, op: np.ndarray, element: GrassmannElement
) -> GrassmannElement:
    """Apply an operator on H0 to the xi-dependence of an element over xi then auxiliaries."""
    blocks = element.coeffs.reshape(-1, ctx.dim)
    return GrassmannElement(element.algebra, (blocks @ op.T).reshape(-1))


def coherent_transport_closed_form(
    space: LinearPhaseSpace,
    source: ComplexStructure,
    target: ComplexStructure,
    alg: GrassmannAlgebra | None = None,
) -> GrassmannElement:
    """det(K)^{1/4} e^{(i/2) varpi_{J1}} exp[(i/2) sum_bd (K^-1)_bd w_b w_d], K = (J0 + J1)/2.

    w_b = (P_{J1} xi)_b - sum_i conj(e_i)_b alpha-bar^i with e the frame of J0.
    """
    n = space.n
    alg = coherent_algebra(n) if alg is None else alg
    k = 0.5 * (source.J + target.J)
    det = float(np.linalg.det(k))
    if det <= config.numerics.degeneracy_threshold:
        raise CutLocusError(f"coherent transport undefined (det = {det:.3e})", det=det)
    k_inv = np.linalg.inv(k)
    p1 = projection_P(target)
    e0 = unitary_frame(source, space).vectors
    w = []
    for b in range(space.dim):
        wb = alg.linear(p1[b, :])
        for i in range(n):
            wb = wb - np.conj(e0[b, i]) * alg.generator(alpha_index(n, i, conjugate=True))
        w.append(wb)
    exponent = alg.zero()
    for b in range(space.dim):
        for d in range(space.dim):
            if k_inv[b, d] != 0:
                exponent = exponent + (0.5j * k_inv[b, d]) * (w[b] * w[d])
    vacuum = fermionic_gaussian(alg, 0.5 * target.varpi_matrix(space))
    return (det**0.25) * (vacuum * exp(exponent))


def transport_coherent(ctx: FermionContext, path: GeodesicPath) -> GrassmannElement:
    require_off_cut_locus(path)
    return coherent_transport_closed_form(ctx.space, path.base, path.end)


def coherent_transport_bogoliubov(ctx: FermionContext, path: GeodesicPath) -> GrassmannElement:
    """transport_bogoliubov applied to c^alpha_{J0} coefficient-wise in alpha."""
    op = transport_bogoliubov(ctx, path).ambient(ctx)
    return apply_extended(ctx, op, coherent_state(path.base, ctx.space))


def two_mode_display_path(ctx: FermionContext, b: float) -> GeodesicPath:
    """The n=2 geodesic whose chart value is z(t) = tan(bt)."""
    if ctx.n != 2:
        raise ValueError("the two-mode display lives in n = 2")
    return GeodesicPath(
        space=ctx.space,
        base=ctx.space.base_j,
        U=np.diag([1.0, -1.0]).astype(complex),
        b=(float(b),),
    )


def two_mode_display_state(ctx: FermionContext, b: float) -> GrassmannElement:
    """cos b exp[sec b (th1 ab1 + th2 ab2) + tan b (th1 th2 + ab1 ab2) - 1/2 sum th_i thbar_i].

    th^i are the coordinates of the moving frame g_1 e at the endpoint.
    """
    path = two_mode_display_path(ctx, b)
    alg = coherent_algebra(2)
    f = path.group_element(1.0) @ unitary_frame(path.base, ctx.space).vectors
    theta = [alg.linear(np.conj(f[:, i])) for i in range(2)]
    theta_bar = [alg.linear(f[:, i]) for i in range(2)]
    ab = [alg.generator(alpha_index(2, i, conjugate=True)) for i in range(2)]
    sec, tan = 1.0 / np.cos(b), np.tan(b)
    exponent = (
        sec * (theta[0] * ab[0] + theta[1] * ab[1])
        + tan * (theta[0] * theta[1] + ab[0] * ab[1])
        - 0.5 * (theta[0] * theta_bar[0] + theta[1] * theta_bar[1])
    )
    return np.cos(b) * exp(exponent)


@dataclass(frozen=True, eq=False)
class CorrectedTransport:
    """Transport on H tensor sqrt(K^-1).

    matrix uses the frame-root basis of the half-form line; paired is the transport in
    bases paired across J0 and J1, where the two quarter-power factors cancel.
    """

    bogoliubov: TransportOperator
    half_form: HalfFormTransport
    matrix: np.ndarray
    paired: np.ndarray
    scaling_product: float


def corrected_transport(ctx: FermionContext, path: GeodesicPath) -> CorrectedTransport:
    bog = transport_bogoliubov(ctx, path)
    half = half_form_transport(path)
    return CorrectedTransport(
        bogoliubov=bog,
        half_form=half,
        matrix=bog.matrix * half.coefficient.value,
        paired=bog.matrix * half.normalization,
        scaling_product=bog.scale * half.normalization,
    )


def first_order_check(ctx: FermionContext, path: GeodesicPath, step: float = 1e-5) -> float:
    """Compare d/dt of the closed-form coherent transport at t0 with -A^H c^alpha_{J0}."""
    t0 = path.t_range[0]
    base = geodesic_sample(path, t0)

    def closed(t: float) -> GrassmannElement:
        return coherent_transport_closed_form(ctx.space, base, geodesic_sample(path, t))

    derivative = (closed(t0 + step) - closed(t0 - step)) * (0.5 / step)
    frame = path.group_element(t0) @ unitary_frame(path.base, ctx.space).vectors
    op = -connection_operator(ctx, base, path.velocity(t0), frame=frame)
    expected = apply_extended(ctx, op, coherent_state(base, ctx.space))
    return derivative.max_deviation(expected)


@dataclass(frozen=True)
class DivergenceSample:
    b: float
    det: float
    scale: float | None
    projection_norm: float
    unitarity_residual: float | None


def divergence_profile(ctx: FermionContext, bs: ArrayLike) -> list[DivergenceSample]:
    """Scaling factor and raw projection norm along geodesics running into the cut locus."""
    if ctx.space.family is not Family.EUCLIDEAN or ctx.n < 2:
        raise ValueError("the cut locus is non-empty only for euclidean n >= 2")
    out = []
    for b in np.asarray(bs, dtype=float):
        path = GeodesicPath(ctx.space, ctx.space.base_j, np.eye(ctx.n, dtype=complex), (float(b),))
        target = path.end
        det = cut_locus_det(path.base, target)
        raw = cross_gram(ctx, path.base, target)
        norm = float(np.linalg.norm(raw, 2))
        if det <= config.numerics.degeneracy_threshold:
            logger.warning("b=%.6g: det %.3e below the degeneracy threshold", b, det)
            out.append(DivergenceSample(float(b), det, None, norm, None))
            continue
        scale = det**-0.25
        m = scale * raw
        residual = float(np.abs(m.conj().T @ m - np.eye(m.shape[1])).max())
        out.append(DivergenceSample(float(b), det, scale, norm, residual))
    return out
