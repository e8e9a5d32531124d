"""
colorpoincare

Exact construction and verification of the Z_n^3-graded (color) Poincare
superalgebra, its 100x100 representation, supergroup and superspace.
"""

__version__ = "0.1.0"
