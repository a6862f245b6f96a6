"""Exact construction and verification of generalized weighing matrices from group actions."""

from .actionspec import ActionSpec, SpecError, load_spec
from .cyclotomic import CycMatrix, CyclotomicInt, cyclotomic_polynomial, reduction_matrix
from .develop import MonomialCoverSpec, NonOrientableError, SignedPair, brute_force_orientable
from .fields import FiniteField, ResidueSymbol, field_of_order
from .groups import CapExceeded, GSet, Transversal, enum_cap
from .matrix import ZERO, GenMatrix, d_equivalent, gram, hadamard_product, is_gw, orthogonality_weight

__all__ = [
    "ActionSpec", "SpecError", "load_spec",
    "CycMatrix", "CyclotomicInt", "cyclotomic_polynomial", "reduction_matrix",
    "MonomialCoverSpec", "NonOrientableError", "SignedPair", "brute_force_orientable",
    "FiniteField", "ResidueSymbol", "field_of_order",
    "CapExceeded", "GSet", "Transversal", "enum_cap",
    "ZERO", "GenMatrix", "d_equivalent", "gram", "hadamard_product", "is_gw", "orthogonality_weight",
]
