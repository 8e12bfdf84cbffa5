"""Dense Grassmann algebras over at most a few dozen generators.

Basis monomials are indexed by bitmasks; bit j set means generator j is
present, and the monomial is the product of its generators in ascending order.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import factorial

import numpy as np
from numpy.typing import ArrayLike

from lib.errors import AlgebraBoundError, AlgebraMismatchError, UnpairedGeneratorError
from lib.utils.config import config

logger = logging.getLogger(__name__)


def _popcount(masks: np.ndarray) -> np.ndarray:
    return np.array([bin(int(m)).count("1") for m in masks], dtype=np.int64)


@dataclass(frozen=True, eq=False)
class GrassmannAlgebra:
    """Exterior algebra on labelled generators.

    conjugates[j] is the index of the conjugate of generator j (j itself for
    real generators, -1 when none is declared).
    """

    labels: tuple[str, ...]
    conjugates: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if len(self.labels) > config.numerics.max_generators:
            raise AlgebraBoundError(
                f"{len(self.labels)} generators exceed the bound {config.numerics.max_generators}"
            )
        if not self.conjugates:
            object.__setattr__(self, "conjugates", tuple(-1 for _ in self.labels))
        if len(self.conjugates) != len(self.labels):
            raise ValueError("conjugates must match labels")

    @classmethod
    def real(cls, count: int, name: str = "xi") -> GrassmannAlgebra:
        return cls(tuple(f"{name}{j + 1}" for j in range(count)), tuple(range(count)))

    @classmethod
    def complex_paired(cls, n: int, name: str = "theta") -> GrassmannAlgebra:
        """Generators theta^1, conj theta^1, ..., theta^n, conj theta^n."""
        labels: list[str] = []
        conj: list[int] = []
        for i in range(n):
            labels += [f"{name}{i + 1}", f"{name}{i + 1}*"]
            conj += [2 * i + 1, 2 * i]
        return cls(tuple(labels), tuple(conj))

    @classmethod
    def concat(cls, *parts: GrassmannAlgebra) -> GrassmannAlgebra:
        labels: list[str] = []
        conj: list[int] = []
        for part in parts:
            offset = len(labels)
            labels += part.labels
            conj += [c + offset if c >= 0 else -1 for c in part.conjugates]
        return cls(tuple(labels), tuple(conj))

    def same_generators(self, other: GrassmannAlgebra) -> bool:
        return other is self or (
            other.labels == self.labels and other.conjugates == self.conjugates
        )

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def dim(self) -> int:
        return 1 << self.size

    @cached_property
    def masks(self) -> np.ndarray:
        return np.arange(self.dim, dtype=np.int64)

    @cached_property
    def bits(self) -> np.ndarray:
        """bits[m, j] = 1 iff generator j is in mask m."""
        return ((self.masks[:, None] >> np.arange(self.size)) & 1).astype(np.int64)

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.bits.sum(axis=1)

    @cached_property
    def _star_table(self) -> tuple[np.ndarray, np.ndarray]:
        targets = np.zeros(self.dim, dtype=np.int64)
        signs = np.ones(self.dim)
        conj = self.conjugates
        for m in range(self.dim):
            members = [j for j in range(self.size) if m >> j & 1]
            images = [conj[j] for j in reversed(members)]
            if any(c < 0 for c in images):
                targets[m] = -1
                continue
            targets[m] = sum(1 << c for c in images)
            inversions = sum(
                1 for a in range(len(images)) for b in range(a + 1, len(images))
                if images[a] > images[b]
            )
            signs[m] = -1.0 if inversions % 2 else 1.0
        return targets, signs

    def zero(self) -> GrassmannElement:
        return GrassmannElement(self, np.zeros(self.dim, dtype=complex))

    def scalar(self, value: complex) -> GrassmannElement:
        e = self.zero()
        e.coeffs[0] = value
        return e

    def one(self) -> GrassmannElement:
        return self.scalar(1.0)

    def generator(self, j: int) -> GrassmannElement:
        e = self.zero()
        e.coeffs[1 << j] = 1.0
        return e

    def linear(self, coefficients: ArrayLike, offset: int = 0) -> GrassmannElement:
        """sum_k c_k theta^{offset + k}."""
        e = self.zero()
        for k, c in enumerate(np.asarray(coefficients, dtype=complex)):
            e.coeffs[1 << (offset + k)] += c
        return e

    def monomial(self, indices: Sequence[int], coefficient: complex = 1.0) -> GrassmannElement:
        """coefficient * theta^{i1} ... theta^{ik} in the given order."""
        result = self.scalar(coefficient)
        for j in indices:
            result = result * self.generator(j)
        return result

    def quadratic(self, matrix: ArrayLike, offset: int = 0) -> GrassmannElement:
        """sum_{ab} A_ab theta^a theta^b over generators offset..offset+len(A)-1."""
        a = np.asarray(matrix, dtype=complex)
        e = self.zero()
        for i in range(a.shape[0]):
            for j in range(i + 1, a.shape[0]):
                e.coeffs[(1 << (offset + i)) | (1 << (offset + j))] += a[i, j] - a[j, i]
        return e


@dataclass(eq=False)
class GrassmannElement:
    algebra: GrassmannAlgebra
    coeffs: np.ndarray

    def _check(self, other: GrassmannElement) -> None:
        if not self.algebra.same_generators(other.algebra):
            raise AlgebraMismatchError("elements belong to different algebras")

    def copy(self) -> GrassmannElement:
        return GrassmannElement(self.algebra, self.coeffs.copy())

    def __add__(self, other: GrassmannElement | complex) -> GrassmannElement:
        if not isinstance(other, GrassmannElement):
            other = self.algebra.scalar(other)
        self._check(other)
        return GrassmannElement(self.algebra, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other: GrassmannElement | complex) -> GrassmannElement:
        if not isinstance(other, GrassmannElement):
            other = self.algebra.scalar(other)
        return self + (-other)

    def __neg__(self) -> GrassmannElement:
        return GrassmannElement(self.algebra, -self.coeffs)

    def __mul__(self, other: GrassmannElement | complex) -> GrassmannElement:
        if isinstance(other, GrassmannElement):
            return multiply(self, other)
        return GrassmannElement(self.algebra, self.coeffs * complex(other))

    def __rmul__(self, other: complex) -> GrassmannElement:
        return GrassmannElement(self.algebra, self.coeffs * complex(other))

    @property
    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def coefficient(self, indices: Sequence[int]) -> complex:
        """Coefficient of the ascending monomial on the given generators."""
        return complex(self.coeffs[sum(1 << j for j in indices)])

    def grade(self, k: int) -> GrassmannElement:
        return GrassmannElement(self.algebra, np.where(self.algebra.degrees == k, self.coeffs, 0))

    @property
    def is_even(self) -> bool:
        return bool(np.all(self.coeffs[self.algebra.degrees % 2 == 1] == 0))

    def allclose(self, other: GrassmannElement, atol: float = 1e-10) -> bool:
        self._check(other)
        return bool(np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=0))

    def max_deviation(self, other: GrassmannElement) -> float:
        self._check(other)
        return float(np.abs(self.coeffs - other.coeffs).max(initial=0.0))


def multiply(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Associative product with the sign of the merged ascending order."""
    a._check(b)
    alg = a.algebra
    out = np.zeros(alg.dim, dtype=complex)
    nz_a = np.flatnonzero(a.coeffs)
    nz_b = np.flatnonzero(b.coeffs)
    if nz_a.size == 0 or nz_b.size == 0:
        return GrassmannElement(alg, out)
    bits = alg.bits
    j = np.arange(alg.size)
    if nz_a.size <= nz_b.size:
        for m in nz_a:
            valid = nz_b[(nz_b & m) == 0]
            if valid.size == 0:
                continue
            # pairs (i in m, j in b) with i > j
            count = np.array([bin(int(m) >> (k + 1)).count("1") for k in j], dtype=np.int64)
            signs = 1 - 2 * ((bits[valid] @ count) & 1)
            np.add.at(out, valid | m, a.coeffs[m] * signs * b.coeffs[valid])
    else:
        for m in nz_b:
            valid = nz_a[(nz_a & m) == 0]
            if valid.size == 0:
                continue
            # pairs (i in a, j in m) with i > j
            count = np.array([bin(int(m) & ((1 << k) - 1)).count("1") for k in j], dtype=np.int64)
            signs = 1 - 2 * ((bits[valid] @ count) & 1)
            np.add.at(out, valid | m, a.coeffs[valid] * signs * b.coeffs[m])
    return GrassmannElement(alg, out)


def exp(e: GrassmannElement) -> GrassmannElement:
    """Exponential of an even element: exp(scalar) times the nilpotent series."""
    if not e.is_even:
        raise ValueError("exp is only defined here for even elements")
    alg = e.algebra
    s = e.scalar_part
    nil = e - alg.scalar(s)
    total = alg.one()
    power = alg.one()
    for k in range(1, alg.size // 2 + 1):
        power = power * nil
        if not np.any(power.coeffs):
            break
        total = total + power * (1.0 / factorial(k))
    return total * np.exp(s)


def _sort_sign(sequence: Sequence[int]) -> int:
    inversions = sum(
        1 for a in range(len(sequence)) for b in range(a + 1, len(sequence))
        if sequence[a] > sequence[b]
    )
    return -1 if inversions % 2 else 1


def berezin_integral(
    e: GrassmannElement, over: Sequence[int], measure: complex = 1.0
) -> GrassmannElement:
    """Integrate over the listed generators; the result lives on the others.

    Convention: integral of theta^R theta^{s1}...theta^{sk} d theta^{s1}...d theta^{sk}
    equals (-1)^{k(k-1)/2} theta^R, which is the same as integrating s1 first.
    """
    order = list(over)
    if len(set(order)) != len(order):
        raise ValueError("duplicate generators in integration list")
    alg = e.algebra
    if any(j < 0 or j >= alg.size for j in order):
        raise ValueError("integration generator outside the algebra")
    k = len(order)
    block = sum(1 << j for j in order)
    sign_k = -1 if (k * (k - 1) // 2) % 2 else 1
    sign_perm = _sort_sign(order)

    out = np.zeros(alg.dim, dtype=complex)
    full = np.flatnonzero(((alg.masks & block) == block) & (e.coeffs != 0))
    for m in full:
        rest = int(m) & ~block
        # move the integrated generators to the right of the remaining ones
        crossings = sum(bin(rest >> (s + 1)).count("1") for s in order)
        sign = -1 if crossings % 2 else 1
        out[rest] += e.coeffs[m] * sign * sign_perm * sign_k
    return GrassmannElement(alg, out * measure)


def full_integral(e: GrassmannElement, over: Sequence[int], measure: complex = 1.0) -> complex:
    return berezin_integral(e, over, measure).scalar_part


def left_derivative(e: GrassmannElement, j: int) -> GrassmannElement:
    """Interior product with the dual of generator j (an odd derivation)."""
    alg = e.algebra
    out = np.zeros(alg.dim, dtype=complex)
    has = np.flatnonzero((alg.masks >> j) & 1)
    before = _popcount(has & ((1 << j) - 1))
    out[has ^ (1 << j)] = e.coeffs[has] * (1 - 2 * (before & 1))
    return GrassmannElement(alg, out)


def star_involution(e: GrassmannElement) -> GrassmannElement:
    """Antilinear, order-reversing involution mapping generators to their conjugates."""
    targets, signs = e.algebra._star_table
    nz = np.flatnonzero(e.coeffs)
    if np.any(targets[nz] < 0):
        raise UnpairedGeneratorError("element involves a generator without a conjugate")
    out = np.zeros(e.algebra.dim, dtype=complex)
    out[targets[nz]] = np.conj(e.coeffs[nz]) * signs[nz]
    return GrassmannElement(e.algebra, out)


def _times_linear(x: GrassmannElement, vec: np.ndarray, target: GrassmannAlgebra) -> np.ndarray:
    """Coefficients of x * (sum_k vec[k] theta^k)."""
    out = np.zeros(target.dim, dtype=complex)
    masks = target.masks
    for k in np.flatnonzero(vec):
        free = (masks >> k) & 1 == 0
        src = masks[free]
        after = _popcount(src >> (k + 1))
        out[src | (1 << k)] += x.coeffs[src] * vec[k] * (1 - 2 * (after & 1))
    return out


def substitute_linear(
    e: GrassmannElement, images: ArrayLike, target: GrassmannAlgebra | None = None
) -> GrassmannElement:
    """Algebra homomorphism theta^j -> sum_k images[k, j] theta^k of the target algebra."""
    alg = e.algebra
    tgt = alg if target is None else target
    L = np.asarray(images, dtype=complex)
    if L.shape != (tgt.size, alg.size):
        raise ValueError(f"substitution matrix must be {tgt.size}x{alg.size}, got {L.shape}")
    products: dict[int, GrassmannElement] = {0: tgt.one()}
    out = tgt.zero()

    def product(mask: int) -> GrassmannElement:
        if mask in products:
            return products[mask]
        top = mask.bit_length() - 1
        prefix = product(mask & ~(1 << top))
        value = GrassmannElement(tgt, _times_linear(prefix, L[:, top], tgt))
        products[mask] = value
        return value

    for m in np.flatnonzero(e.coeffs):
        out = out + product(int(m)) * e.coeffs[m]
    return out


def embed(
    e: GrassmannElement, target: GrassmannAlgebra, positions: Sequence[int]
) -> GrassmannElement:
    """Relabel generator j of e's algebra as generator positions[j] of target.

    positions must be increasing so ascending order is preserved.
    """
    if list(positions) != sorted(positions) or len(positions) != e.algebra.size:
        raise ValueError("embedding positions must be increasing and cover the source")
    out = np.zeros(target.dim, dtype=complex)
    for m in np.flatnonzero(e.coeffs):
        tm = sum(1 << positions[j] for j in range(e.algebra.size) if int(m) >> j & 1)
        out[tm] = e.coeffs[m]
    return GrassmannElement(target, out)


def restrict(
    e: GrassmannElement, source: GrassmannAlgebra, positions: Sequence[int]
) -> GrassmannElement:
    """Inverse of embed: keep only monomials on the given positions."""
    out = np.zeros(source.dim, dtype=complex)
    allowed = sum(1 << p for p in positions)
    for m in np.flatnonzero(e.coeffs):
        if int(m) & ~allowed:
            continue
        sm = sum(1 << j for j, p in enumerate(positions) if int(m) >> p & 1)
        out[sm] = e.coeffs[m]
    return GrassmannElement(source, out)


def top_coefficient(e: GrassmannElement) -> complex:
    """Coefficient of theta^1 ... theta^N in ascending order."""
    return complex(e.coeffs[-1])
