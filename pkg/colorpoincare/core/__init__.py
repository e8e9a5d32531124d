"""
Core components: configuration, errors, scalars, grading and the color Grassmann algebra.
"""
from .config import Settings, get_settings
from .errors import (
    ColorPoincareError,
    DegreeMismatchError,
    ExpressionSyntaxError,
    GradingError,
    LayoutError,
    NonInvertibleError,
    NotExactSquareError,
    NotNilpotentError,
    UnknownElementError,
)
from .grading import Classification, Degree, Grading, GradingConfig
from .grassmann import Generator, GrassmannAlgebra, Multivector, mv_adjoint, mv_derivative, mv_mul
from .scalars import Scalar, ScalarField, get_field

__all__ = [
    "Settings",
    "get_settings",
    "ColorPoincareError",
    "DegreeMismatchError",
    "ExpressionSyntaxError",
    "GradingError",
    "LayoutError",
    "NonInvertibleError",
    "NotExactSquareError",
    "NotNilpotentError",
    "UnknownElementError",
    "Classification",
    "Degree",
    "Grading",
    "GradingConfig",
    "Generator",
    "GrassmannAlgebra",
    "Multivector",
    "mv_adjoint",
    "mv_derivative",
    "mv_mul",
    "Scalar",
    "ScalarField",
    "get_field",
]
