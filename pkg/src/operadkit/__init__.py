"""Computer algebra for the nonsymmetric operads ²As and As².

Koszul duality, the rewriting check of Koszulness, the cobar differential
of As²∞ and exact homotopy transfer for dg As²-algebras over ℚ.
"""

from .cobar import cobar_differential, d_squared_check, ainfty_slice_check
from .presentation import QuadraticPresentation, koszul_dual, pencil_associativity_check, preset
from .rewriting import confluence_report, count_normal_forms, orient, poincare_consistency
from .transfer import (
    ChainComplex,
    DgAs2Algebra,
    build_retract,
    check_dg_as2,
    random_dg_as2,
    transfer,
    verify_infinity_relations,
)

__all__ = [
    "ChainComplex", "DgAs2Algebra", "QuadraticPresentation", "ainfty_slice_check", "build_retract",
    "check_dg_as2", "cobar_differential", "confluence_report", "count_normal_forms", "d_squared_check",
    "koszul_dual", "orient", "pencil_associativity_check", "poincare_consistency", "preset",
    "random_dg_as2", "transfer", "verify_infinity_relations",
]
__version__ = "0.1.0"
