"""
The graded Poincare superalgebra: Clifford data, bracket tables and their checks.
"""
from .checks import grading_report, jacobi_report, same_sign_bicolor_triple
from .clifford import CliffordData, PhaseChoices, SpinorPairing, default_clifford, make_clifford
from .conventions import ConventionSpace, convention_search
from .superalgebra import (
    BasisElement,
    CouplingConfig,
    StructureConstants,
    bracket,
    build_four_component,
    build_two_component,
)

__all__ = [
    "grading_report",
    "jacobi_report",
    "same_sign_bicolor_triple",
    "CliffordData",
    "PhaseChoices",
    "SpinorPairing",
    "default_clifford",
    "make_clifford",
    "ConventionSpace",
    "convention_search",
    "BasisElement",
    "CouplingConfig",
    "StructureConstants",
    "bracket",
    "build_four_component",
    "build_two_component",
]
