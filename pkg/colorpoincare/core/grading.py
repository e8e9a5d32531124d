"""
Degrees in Z_n^3, the commutation factor and element classification.

Degrees are stored as canonical representatives: components in [0, n) when
n > 0, arbitrary integers when n = 0. The commutation factor is always
evaluated from these representatives.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from colorpoincare.core.errors import GradingError
from colorpoincare.core.scalars import Scalar, ScalarField, get_field

logger = logging.getLogger(__name__)

EPSILON_CACHE_SIZE = 4096


class GradingConfig(BaseModel):
    """Grading group Z_n^3 (n = 0 means Z^3 with q formal) and scalar field order."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(0, ge=0, description="Modulus of the grading group; 0 for Z^3")
    root_field_order: Optional[int] = Field(
        None, gt=0, description="Cyclotomic order m of the coefficient field"
    )

    @model_validator(mode="after")
    def _check(self) -> "GradingConfig":
        if self.n in (1, 2):
            raise ValueError(f"n={self.n} degenerates the color structure; use n=0 or n>=3")
        m = self.m
        if m % 8 != 0:
            raise ValueError(f"root_field_order must be divisible by 8, got {m}")
        if self.n and m % self.n != 0:
            raise ValueError(f"root_field_order {m} must be divisible by n={self.n}")
        return self

    @property
    def m(self) -> int:
        if self.root_field_order is not None:
            return self.root_field_order
        if self.n == 0:
            return 8
        return math.lcm(8, self.n)


@dataclass(frozen=True, order=True)
class Degree:
    r: int
    g: int
    b: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.r, self.g, self.b)

    def __str__(self) -> str:
        return f"({self.r},{self.g},{self.b})"


class Classification(str, Enum):
    BOSONIC = "Bosonic"
    FERMIONIC = "Fermionic"
    EXOTIC = "Exotic"


# Names used in reports and tables: 1 = white, 1b = antiwhite, rb = anti-red, ...
MONO_WHITE_NAMES = ["1", "r", "g", "b", "1b", "rb", "gb", "bb"]
_MONO_WHITE_RAW = {
    "1": (1, 1, 1),
    "r": (1, 0, 0),
    "g": (0, 1, 0),
    "b": (0, 0, 1),
    "1b": (-1, -1, -1),
    "rb": (-1, 0, 0),
    "gb": (0, -1, 0),
    "bb": (0, 0, -1),
}
BICOLOR_NAMES = [
    "r+g", "g+b", "b+r",
    "rb+gb", "gb+bb", "bb+rb",
    "r+gb", "g+bb", "b+rb",
    "rb+g", "gb+b", "bb+r",
]


class Grading:
    """Arithmetic in Z_n^3 together with its commutation factor."""

    def __init__(self, config: Optional[GradingConfig] = None):
        self.config = config or GradingConfig()
        self.n = self.config.n
        self.field: ScalarField = get_field(self.n, self.config.m)
        self._eps = lru_cache(maxsize=EPSILON_CACHE_SIZE)(self._epsilon)
        self.zero = self.degree(0, 0, 0)

    # --- Degrees ---

    def degree(self, r: int, g: int, b: int) -> Degree:
        if self.n:
            return Degree(r % self.n, g % self.n, b % self.n)
        return Degree(r, g, b)

    def reduce(self, x: Degree) -> Degree:
        return self.degree(x.r, x.g, x.b)

    def add(self, x: Degree, y: Degree) -> Degree:
        return self.degree(x.r + y.r, x.g + y.g, x.b + y.b)

    def neg(self, x: Degree) -> Degree:
        return self.degree(-x.r, -x.g, -x.b)

    def sub(self, x: Degree, y: Degree) -> Degree:
        return self.add(x, self.neg(y))

    def sum(self, degrees: Iterable[Degree]) -> Degree:
        total = self.zero
        for d in degrees:
            total = self.add(total, d)
        return total

    def named(self, name: str) -> Degree:
        """Degree from a name such as 'r', '1b' or 'r+gb'."""
        parts = name.split("+")
        total = self.zero
        for part in parts:
            if part not in _MONO_WHITE_RAW:
                raise GradingError(f"unknown degree name {name!r}")
            total = self.add(total, self.degree(*_MONO_WHITE_RAW[part]))
        return total

    def name_of(self, x: Degree) -> str:
        if x == self.zero:
            return "0"
        for name in MONO_WHITE_NAMES + BICOLOR_NAMES:
            if self.named(name) == x:
                return name
        return str(x)

    def generator_degrees(self) -> List[Degree]:
        return [self.named(name) for name in MONO_WHITE_NAMES]

    def mono_white_degrees(self) -> List[Degree]:
        return self.generator_degrees()

    def bicolor_degrees(self) -> List[Degree]:
        return [self.named(name) for name in BICOLOR_NAMES]

    def in_scope_degrees(self) -> List[Degree]:
        """The 21 degrees carried by the superalgebra."""
        return [self.zero] + self.mono_white_degrees() + self.bicolor_degrees()

    # --- Commutation factor ---

    def epsilon(self, x: Degree, y: Degree) -> Scalar:
        return self._eps(x, y)

    def _epsilon(self, x: Degree, y: Degree) -> Scalar:
        sign_exp = x.r * y.r + x.g * y.g + x.b * y.b
        q_exp = x.r * y.g - y.r * x.g + x.g * y.b - y.g * x.b + x.b * y.r - y.b * x.r
        value = self.field.q(q_exp)
        if sign_exp % 2:
            value = -value
        return value

    # --- Classification ---

    def classify(self, x: Degree) -> Classification:
        """Commutation behaviour against the lattice spanned by generator degrees."""
        one = self.field.one
        gens = self.generator_degrees()
        values = [self.epsilon(x, y) for y in gens]
        if all(v == one for v in values):
            return Classification.BOSONIC
        signs = [one if (y.r + y.g + y.b) % 2 == 0 else -one for y in gens]
        if all(v == s for v, s in zip(values, signs)):
            return Classification.FERMIONIC
        return Classification.EXOTIC

    def classify_closed_form(self, x: Degree) -> Classification:
        """Analytic classification for the Z^3 grading (n = 0)."""
        if self.n:
            raise GradingError("closed-form classification applies to n=0 only")
        if x.r == x.g == x.b:
            return Classification.BOSONIC if x.r % 2 == 0 else Classification.FERMIONIC
        return Classification.EXOTIC
