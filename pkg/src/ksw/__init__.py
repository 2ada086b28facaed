"""Exact-arithmetic workbench for Clifford algebras, Kuga-Satake complex
structures, Weil-type endomorphisms, harmonic symmetric-power
decompositions, Betti-number bounds, and the formal Kunneth correspondence
identity -- everything over the rationals, nothing floating."""

from .betti import BoundResult, CatalogEntry, audit_b2n_minus_1, audit_b3, bound_exponent, ks_factor_dims
from .clifford import CliffordAlgebra, CliffordElement, blade_product, left_mul_operator, mul, right_mul_operator
from .formal_corr import GradedAlgebra, GradedElement, gamma_pushforward, graded_mul, kunneth_square
from .hodge import (
    HKStructure,
    HodgeTypeSpectrum,
    PeriodPlane,
    Weight1Structure,
    hodge_level,
    rotation_generator,
    type_spectrum,
    validate_period,
)
from .kuga_satake import KSStructure, complex_structure_element, endomorphism_embedding, odd_even_isomorphism, structure_commutators
from .linalg import Matrix, Rational, rank_and_kernel, solve_or_invert
from .qspace import InverseForm, QuadraticSpace, diagonalize, inverse_form, signature
from .suite import RunReport, run_full_suite
from .sympow import SymTensorSpace, build_sym, decompose, harmonic, isotropic_span_check, level_two_part
from .weil import QuadraticEndo, WeilReport, certify_22, check_quadratic_endo, hodge_class_dimension, weil_class_space, weil_multiplicities

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CatalogEntry",
    "CliffordAlgebra",
    "CliffordElement",
    "GradedAlgebra",
    "GradedElement",
    "HKStructure",
    "HodgeTypeSpectrum",
    "InverseForm",
    "KSStructure",
    "Matrix",
    "PeriodPlane",
    "QuadraticEndo",
    "QuadraticSpace",
    "Rational",
    "RunReport",
    "SymTensorSpace",
    "Weight1Structure",
    "WeilReport",
    "audit_b2n_minus_1",
    "audit_b3",
    "blade_product",
    "bound_exponent",
    "build_sym",
    "certify_22",
    "check_quadratic_endo",
    "complex_structure_element",
    "decompose",
    "diagonalize",
    "endomorphism_embedding",
    "gamma_pushforward",
    "graded_mul",
    "harmonic",
    "hodge_class_dimension",
    "hodge_level",
    "inverse_form",
    "isotropic_span_check",
    "ks_factor_dims",
    "kunneth_square",
    "left_mul_operator",
    "level_two_part",
    "mul",
    "odd_even_isomorphism",
    "rank_and_kernel",
    "right_mul_operator",
    "rotation_generator",
    "run_full_suite",
    "signature",
    "solve_or_invert",
    "structure_commutators",
    "type_spectrum",
    "validate_period",
    "weil_class_space",
    "weil_multiplicities",
]
