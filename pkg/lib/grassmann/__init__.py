"""Finite Grassmann algebras with Berezin integration and fermionic Gaussians."""

from lib.grassmann.algebra import (
    GrassmannAlgebra,
    GrassmannElement,
    berezin_integral,
    embed,
    exp,
    full_integral,
    left_derivative,
    multiply,
    restrict,
    star_involution,
    substitute_linear,
    top_coefficient,
)
from lib.grassmann.hodge import hodge_star, volume_form

__all__ = [
    "GrassmannAlgebra",
    "GrassmannElement",
    "berezin_integral",
    "embed",
    "exp",
    "full_integral",
    "hodge_star",
    "left_derivative",
    "multiply",
    "restrict",
    "star_involution",
    "substitute_linear",
    "top_coefficient",
    "volume_form",
]
