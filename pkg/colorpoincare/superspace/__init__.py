"""
Superspace points, the supergroup action and differential operators.
"""
from .operators import DiffOperator, OperatorRepresentation, delta_zeta, operator_bracket_report, operator_of
from .point import SuperPoint, Superspace

__all__ = [
    "DiffOperator",
    "OperatorRepresentation",
    "delta_zeta",
    "operator_bracket_report",
    "operator_of",
    "SuperPoint",
    "Superspace",
]
