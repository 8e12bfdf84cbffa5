"""Polynomial sections p(x) e^{-q_J(x)/4} and exact Gaussian moments."""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike

from lib.boson.gaussian_states import gaussian_integral, kernel_matrix
from lib.errors import PairingBoundError
from lib.geometry.phase_space import (
    ComplexStructure,
    LinearPhaseSpace,
    projection_P,
    unitary_frame,
)
from lib.geometry.symm_space import GeodesicPath, cut_locus_det
from lib.utils.config import config

logger = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class Polynomial:
    """Complex polynomial in real variables x_1..x_d, stored as multi-index -> coefficient."""

    nvars: int
    terms: dict[MultiIndex, complex] = field(default_factory=dict)

    @classmethod
    def constant(cls, nvars: int, value: complex = 1.0) -> Polynomial:
        return cls(nvars, {(0,) * nvars: complex(value)})

    @classmethod
    def linear(cls, coefficients: ArrayLike) -> Polynomial:
        c = np.asarray(coefficients, dtype=complex)
        terms = {}
        for a, value in enumerate(c):
            if value != 0:
                idx = [0] * len(c)
                idx[a] = 1
                terms[tuple(idx)] = complex(value)
        return cls(len(c), terms)

    def _clean(self, terms: dict[MultiIndex, complex]) -> Polynomial:
        return Polynomial(self.nvars, {k: v for k, v in terms.items() if v != 0})

    @property
    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=0)

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._clean(out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + other.scale(-1.0)

    def scale(self, value: complex) -> Polynomial:
        return self._clean({k: v * value for k, v in self.terms.items()})

    def __mul__(self, other: Polynomial) -> Polynomial:
        out: dict[MultiIndex, complex] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2, strict=True))
                out[k] = out.get(k, 0) + v1 * v2
        return self._clean(out)

    def conj(self) -> Polynomial:
        return Polynomial(self.nvars, {k: complex(np.conj(v)) for k, v in self.terms.items()})

    def partial(self, a: int) -> Polynomial:
        out: dict[MultiIndex, complex] = {}
        for k, v in self.terms.items():
            if k[a] == 0:
                continue
            lowered = list(k)
            lowered[a] -= 1
            out[tuple(lowered)] = out.get(tuple(lowered), 0) + v * k[a]
        return self._clean(out)

    def directional(self, x: ArrayLike) -> Polynomial:
        """Derivative along a (complex) vector x."""
        total = Polynomial(self.nvars)
        for a, xa in enumerate(np.asarray(x, dtype=complex)):
            if xa != 0:
                total = total + self.partial(a).scale(xa)
        return total

    def __call__(self, points: ArrayLike) -> np.ndarray:
        """Evaluate at points of shape (..., nvars)."""
        pts = np.asarray(points, dtype=complex)
        out = np.zeros(pts.shape[:-1], dtype=complex)
        for k, v in self.terms.items():
            out = out + v * np.prod(pts ** np.asarray(k), axis=-1)
        return out

    def max_abs_difference(self, other: Polynomial) -> float:
        diff = self - other
        return max((abs(v) for v in diff.terms.values()), default=0.0)


def holomorphic_coordinates(structure: ComplexStructure, space: LinearPhaseSpace) -> np.ndarray:
    """Rows z_i with z_i(x) = h0(x, e_i); they vanish on V^{0,1}_J."""
    e = unitary_frame(structure, space).vectors
    return space.coordinates(e, np.eye(space.dim))


@dataclass(frozen=True, eq=False)
class PolynomialSection:
    """psi = p(x) e^{-q_J(x)/4}."""

    space: LinearPhaseSpace
    structure: ComplexStructure
    poly: Polynomial

    @classmethod
    def vacuum(cls, space: LinearPhaseSpace, structure: ComplexStructure) -> PolynomialSection:
        return cls(space, structure, Polynomial.constant(space.dim))

    @classmethod
    def holomorphic_monomial(
        cls, space: LinearPhaseSpace, structure: ComplexStructure, powers: Iterable[int]
    ) -> PolynomialSection:
        """prod_i z_i^{k_i} e^{-q_J/4} in the unitary-frame coordinates of J."""
        z = holomorphic_coordinates(structure, space)
        poly = Polynomial.constant(space.dim)
        for i, k in enumerate(powers):
            for _ in range(k):
                poly = poly * Polynomial.linear(z[i])
        return cls(space, structure, poly)

    def with_poly(self, poly: Polynomial) -> PolynomialSection:
        return PolynomialSection(self.space, self.structure, poly)

    def __add__(self, other: PolynomialSection) -> PolynomialSection:
        return self.with_poly(self.poly + other.poly)

    def scale(self, value: complex) -> PolynomialSection:
        return self.with_poly(self.poly.scale(value))

    def __call__(self, points: ArrayLike) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        s = self.structure.q_matrix(self.space)
        weight = np.exp(-0.25 * np.einsum("...a,ab,...b->...", pts, s, pts))
        return self.poly(pts) * weight

    def is_holomorphic(self, tolerance: float = 1e-12) -> bool:
        e = unitary_frame(self.structure, self.space).vectors
        for k in range(self.space.n):
            d = self.poly.directional(np.conj(e[:, k]))
            if any(abs(v) > tolerance for v in d.terms.values()):
                return False
        return True


def nabla_b(section: PolynomialSection, x: ArrayLike) -> PolynomialSection:
    """nabla_x = d_x + (i/2) omega(x, .) acting on p e^{-q_J/4}."""
    v = np.asarray(x, dtype=complex)
    space = section.space
    s = section.structure.q_matrix(space)
    chain = -0.5 * (s @ v) + 0.5j * space.musical(v)
    return section.with_poly(section.poly.directional(v) + section.poly * Polynomial.linear(chain))


def prequant_operator(section: PolynomialSection, alpha: ArrayLike) -> PolynomialSection:
    """alpha-hat = i nabla_{nu^-1(alpha)} + alpha."""
    a = np.asarray(alpha, dtype=complex)
    vector = section.space.inverse_musical(a)
    moved = nabla_b(section, vector).scale(1j)
    return moved.with_poly(moved.poly + section.poly * Polynomial.linear(a))


def inverse_form(space: LinearPhaseSpace, alpha: ArrayLike, beta: ArrayLike) -> complex:
    """omega^{-1}(alpha, beta) with the inverse matrix of the form."""
    return complex(np.asarray(alpha) @ np.linalg.inv(space.form) @ np.asarray(beta))


def holomorphic_action(
    section: PolynomialSection, alpha: ArrayLike
) -> PolynomialSection:
    """i L_{nu^-1(alpha^{0,1})} phi + alpha^{1,0} phi on the holomorphic factor phi."""
    a = np.asarray(alpha, dtype=complex)
    p = projection_P(section.structure)
    a10 = p.T @ a
    a01 = np.conj(p).T @ a
    vector = section.space.inverse_musical(a01)
    poly = section.poly.directional(vector).scale(1j) + section.poly * Polynomial.linear(a10)
    return section.with_poly(poly)


@lru_cache(maxsize=None)
def _moment(index: MultiIndex, covariance: tuple[tuple[float, ...], ...]) -> float:
    """E[prod x_a^{m_a}] under the centred Gaussian with the given covariance (Isserlis)."""
    total = sum(index)
    if total == 0:
        return 1.0
    if total % 2:
        return 0.0
    a = next(i for i, m in enumerate(index) if m)
    rest = list(index)
    rest[a] -= 1
    value = 0.0
    for b, mb in enumerate(rest):
        if mb == 0 or covariance[a][b] == 0:
            continue
        lowered = list(rest)
        lowered[b] -= 1
        value += covariance[a][b] * mb * _moment(tuple(lowered), covariance)
    return value


def gaussian_expectation(poly: Polynomial, covariance: np.ndarray) -> complex:
    if poly.degree > config.numerics.max_pairing_degree:
        raise PairingBoundError(
            f"degree {poly.degree} exceeds the pairing bound {config.numerics.max_pairing_degree}"
        )
    cov = tuple(tuple(float(v) for v in row) for row in np.asarray(covariance))
    return complex(sum(v * _moment(k, cov) for k, v in poly.terms.items()))


def wick_covariance(structure: ComplexStructure, space: LinearPhaseSpace) -> np.ndarray:
    """Covariance of the normalised weight e^{-q_J/2} (det q_J = 1)."""
    return np.linalg.inv(structure.q_matrix(space))


def wick_inner_product(first: PolynomialSection, second: PolynomialSection) -> complex:
    """Integral of conj(p) p' e^{-q_J/2} against d^{2n}x / (2 pi)^n."""
    if first.structure is not second.structure and not np.allclose(
        first.structure.J, second.structure.J, atol=1e-12
    ):
        raise ValueError("wick_inner_product needs sections over the same J")
    cov = wick_covariance(first.structure, first.space)
    return gaussian_expectation(first.poly.conj() * second.poly, cov)


def shift(poly: Polynomial, offset: ArrayLike) -> Polynomial:
    """p(y + m) by the terminating Taylor series."""
    m = np.asarray(offset, dtype=complex)
    term = poly
    total = poly
    for k in range(1, poly.degree + 1):
        term = term.directional(m).scale(1.0 / k)
        total = total + term
    return total


def wick_transport(
    section: PolynomialSection, path: GeodesicPath, points: ArrayLike
) -> np.ndarray:
    """det^{1/4} times the Bergman projection of section onto H_{J1}, sampled at points.

    The kernel integral is a Gaussian integral times the Wick expectation of
    p shifted by the complex mean.
    """
    space = section.space
    target = path.end
    a = 0.5 * (section.structure.q_matrix(space) + target.q_matrix(space))
    a = 0.5 * (a + a.T)
    cov = np.linalg.inv(a)
    kernel = kernel_matrix(space, target)
    s1 = target.q_matrix(space)
    scale = cut_locus_det(section.structure, target) ** 0.25
    values = []
    for x in np.atleast_2d(np.asarray(points, dtype=float)):
        b = kernel @ x
        moment = gaussian_expectation(shift(section.poly, cov @ b), cov)
        values.append(scale * np.exp(-0.25 * x @ s1 @ x) * gaussian_integral(a, b) * moment)
    return np.array(values)
