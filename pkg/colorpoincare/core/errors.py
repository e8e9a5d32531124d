"""
Exception hierarchy for the colorpoincare library.

Every error raised on bad input derives from ColorPoincareError, which is itself
a ValueError so callers that only guard against ValueError keep working.
"""

from typing import Optional


class ColorPoincareError(ValueError):
    """Base class for all library errors."""


class GradingError(ColorPoincareError):
    """Invalid grading group or mismatched degrees."""


class NonInvertibleError(ColorPoincareError, ZeroDivisionError):
    """Inverse requested for zero or for a non-unit scalar."""


class NotExactSquareError(ColorPoincareError):
    """A square root is not representable in the coefficient field."""


class DegreeMismatchError(ColorPoincareError):
    """A value does not carry the degree its slot requires."""


class UnknownElementError(ColorPoincareError):
    """A basis element or generator that does not belong to the structure."""


class NotNilpotentError(ColorPoincareError):
    """exp_nilpotent was given a matrix whose square does not vanish."""

    def __init__(self, message: str, position: Optional[tuple] = None):
        super().__init__(message)
        self.position = position


class LayoutError(ColorPoincareError):
    """A supermatrix block violates the block layout."""


class ExpressionSyntaxError(ColorPoincareError):
    """Lexical or syntax error in an algebra expression."""

    def __init__(self, message: str, position: Optional[int] = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position
