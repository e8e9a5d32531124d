"""
The 100x100 block representation.
"""
from .gamma import Representation, element_matrix, gamma_of, homomorphism_report, make_representation
from .layout import BlockLayout, block_layout, degree_consistency_report
from .supermatrix import SuperMatrix

__all__ = [
    "Representation",
    "element_matrix",
    "gamma_of",
    "homomorphism_report",
    "make_representation",
    "BlockLayout",
    "block_layout",
    "degree_consistency_report",
    "SuperMatrix",
]
