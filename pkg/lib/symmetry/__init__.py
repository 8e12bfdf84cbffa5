"""Group actions, invariant forms, fixed points and reduced fermionic rings."""

from lib.symmetry.actions import (
    ActionKind,
    GroupAction,
    InvariantForms,
    Parity,
    PropernessVerdict,
    Representation,
    check_properness,
    fixed_tangent_dim,
    fixed_tangent_real_dim,
    holomorphic_representation,
    invariant_bilinear,
    moment_map_boson,
    moment_map_fermion,
)
from lib.symmetry.conjugation import (
    ConjugationOperator,
    ConjugationReport,
    normalize_conjugation,
    real_structure_defects,
)
from lib.symmetry.fixed_points import FixedPointSet, flipped_structure, torus_fixed_points
from lib.symmetry.isotypic import (
    IsotypicSplit,
    connection_commutator,
    invariant_tangent_directions,
    isotypic_split,
    lifted_element,
    lifted_generator,
)
from lib.symmetry.quotient_ring import QuotientRing, s1_quotient_ring

__all__ = [
    "ActionKind",
    "ConjugationOperator",
    "ConjugationReport",
    "FixedPointSet",
    "GroupAction",
    "InvariantForms",
    "IsotypicSplit",
    "Parity",
    "PropernessVerdict",
    "QuotientRing",
    "Representation",
    "connection_commutator",
    "fixed_tangent_dim",
    "fixed_tangent_real_dim",
    "flipped_structure",
    "holomorphic_representation",
    "invariant_bilinear",
    "invariant_tangent_directions",
    "isotypic_split",
    "lifted_element",
    "lifted_generator",
    "moment_map_boson",
    "moment_map_fermion",
    "normalize_conjugation",
    "check_properness",
    "real_structure_defects",
    "s1_quotient_ring",
]
