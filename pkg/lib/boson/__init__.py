"""Bosonic quantisation of a symplectic vector space on polynomial and Gaussian states."""

from lib.boson.gaussian_states import (
    GaussianState,
    bogoliubov_coherent,
    coherent_overlap,
    coherent_state,
    half_form_pairing_boson,
    overlap,
    transport_gaussian,
)
from lib.boson.polynomials import (
    Polynomial,
    PolynomialSection,
    nabla_b,
    prequant_operator,
    wick_inner_product,
    wick_transport,
)
from lib.boson.quadrature import bergman_transport_quadrature

__all__ = [
    "GaussianState",
    "Polynomial",
    "PolynomialSection",
    "bergman_transport_quadrature",
    "bogoliubov_coherent",
    "coherent_overlap",
    "coherent_state",
    "half_form_pairing_boson",
    "nabla_b",
    "overlap",
    "prequant_operator",
    "transport_gaussian",
    "wick_inner_product",
    "wick_transport",
]
