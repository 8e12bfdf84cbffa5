"""Fermionic quantisation of a euclidean vector space."""

from lib.fermion.connection import connection_operator, transport_ode
from lib.fermion.context import FermionContext, HilbertSubspace
from lib.fermion.holonomy import HolonomyReport, holonomy
from lib.fermion.transport import (
    CorrectedTransport,
    Provenance,
    TransportOperator,
    corrected_transport,
    kernel_transport,
    transport_bogoliubov,
    transport_coherent,
)

__all__ = [
    "CorrectedTransport",
    "FermionContext",
    "HilbertSubspace",
    "HolonomyReport",
    "Provenance",
    "TransportOperator",
    "connection_operator",
    "corrected_transport",
    "holonomy",
    "kernel_transport",
    "transport_bogoliubov",
    "transport_coherent",
    "transport_ode",
]
