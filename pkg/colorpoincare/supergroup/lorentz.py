"""
Lorentz part of a supergroup element.

A LorentzElement carries the vector matrix Lambda together with the spinor
lift S that acts on every spinor block, and both inverses. Entries are
Scalars or degree-zero Multivectors; all of them are #-fixed.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from colorpoincare.algebra.clifford import identity, scale, zeros
from colorpoincare.core.errors import DegreeMismatchError, NotNilpotentError, UnknownElementError
from colorpoincare.core.grassmann import Multivector
from colorpoincare.representation.gamma import Representation, sharp
from colorpoincare.representation.layout import SPINOR_BLOCKS, VECTOR_BLOCKS
from colorpoincare.representation.supermatrix import Entry, SuperMatrix

logger = logging.getLogger(__name__)

MAX_SERIES_TERMS = 64
SPATIAL = (1, 2, 3)


def sharp_matrix(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, value in np.ndenumerate(a):
        out[idx] = sharp(value)
    return out


def apply(a: np.ndarray, v: Sequence[Entry], zero: Entry) -> List[Entry]:
    """a @ v with entries of a on the left."""
    out = []
    for row in a:
        total = zero
        for c, x in zip(row, v):
            if c and x:
                total = total + c * x
        out.append(total)
    return out


def exp_series(n: np.ndarray, one: Entry, zero: Entry) -> np.ndarray:
    """Truncated exponential of a matrix whose powers eventually vanish."""
    size = n.shape[0]
    result = np.empty((size, size), dtype=object)
    result.fill(zero)
    for k in range(size):
        result[k, k] = one
    term = result.copy()
    field = one.field if not isinstance(one, Multivector) else one.algebra.field
    for k in range(1, MAX_SERIES_TERMS + 1):
        term = term @ n
        term = scale(field.rational(Fraction(1, k)), term)
        if all(not x for x in term.flat):
            return result
        result = result + term
    raise NotNilpotentError(f"exponential series did not terminate after {MAX_SERIES_TERMS} terms")


@dataclass(frozen=True, eq=False)
class LorentzElement:
    rep: Representation
    vector: np.ndarray
    spinor: np.ndarray
    vector_inverse: np.ndarray
    spinor_inverse: np.ndarray

    # --- Constructors ---

    @classmethod
    def identity(cls, rep: Representation) -> "LorentzElement":
        eye = identity(rep.field, 4)
        return cls(rep, eye, eye, eye, eye)

    @classmethod
    def generators(cls, rep: Representation, alpha: int, beta: int) -> Tuple[np.ndarray, np.ndarray]:
        """K = (i/hbar) rotation block (4x4 part) and J = (i/hbar) spin block."""
        ih = rep.field.i() / rep.hbar
        k = scale(ih, rep.rotation_block(alpha, beta))[:4, :4].copy()
        j = scale(ih, rep.spin_block(alpha, beta))
        return k, j

    @classmethod
    def quarter_turn(cls, rep: Representation, alpha: int, beta: int) -> "LorentzElement":
        """Rotation by a right angle in a spatial plane; exact over Q(z8)."""
        if alpha not in SPATIAL or beta not in SPATIAL or alpha == beta:
            raise UnknownElementError(f"quarter turns exist for spatial planes only, got ({alpha},{beta})")
        f = rep.field
        k, j = cls.generators(rep, alpha, beta)
        plane = zeros(f, 4)
        plane[alpha - 1, alpha - 1] = f.one
        plane[beta - 1, beta - 1] = f.one
        eye = identity(f, 4)
        vector = eye - plane + k
        vector_inverse = eye - plane - k
        half = f.sqrt2() * Fraction(1, 2)
        two_j = scale(f.rational(2), j)
        spinor = scale(half, eye + two_j)
        spinor_inverse = scale(half, eye - two_j)
        return cls(rep, vector, spinor, vector_inverse, spinor_inverse)

    @classmethod
    def from_omega(
        cls,
        rep: Representation,
        omega: Dict[Tuple[int, int], Entry],
        base: Optional["LorentzElement"] = None,
    ) -> "LorentzElement":
        """
        base * exp(sum omega K) with omega nilpotent, degree zero and #-fixed.

        Raises NotNilpotentError when the series does not terminate.
        """
        f = rep.field
        g = rep.grading
        n = zeros(f, 4)
        ns = zeros(f, 4)
        one: Entry = f.one
        zero: Entry = f.zero
        for (alpha, beta), w in omega.items():
            if isinstance(w, Multivector):
                if w and w.degree() != g.zero:
                    raise DegreeMismatchError(f"omega{alpha}{beta} must have degree zero")
                one, zero = w.algebra.one, w.algebra.zero
            k, j = cls.generators(rep, alpha, beta)
            n = n + scale_entry(w, k)
            ns = ns + scale_entry(w, j)
        vector = exp_series(n, one, zero)
        spinor = exp_series(ns, one, zero)
        vector_inverse = exp_series(-n, one, zero)
        spinor_inverse = exp_series(-ns, one, zero)
        element = cls(rep, vector, spinor, vector_inverse, spinor_inverse)
        return base.compose(element) if base is not None else element

    # --- Group law ---

    def compose(self, other: "LorentzElement") -> "LorentzElement":
        return LorentzElement(
            self.rep,
            self.vector @ other.vector,
            self.spinor @ other.spinor,
            other.vector_inverse @ self.vector_inverse,
            other.spinor_inverse @ self.spinor_inverse,
        )

    def inverse(self) -> "LorentzElement":
        return LorentzElement(
            self.rep, self.vector_inverse, self.spinor_inverse, self.vector, self.spinor
        )

    # --- Actions ---

    def vector_action(self, x: Sequence[Entry], zero: Entry) -> List[Entry]:
        return apply(self.vector, x, zero)

    def spin_action(self, zeta: Sequence[Entry], zero: Entry) -> List[Entry]:
        """Gamma^spin(Lambda) zeta, defined by (Gamma^spin zeta)^# = gamma_4 S gamma_4 zeta^#."""
        g4 = self.rep.cliff.gamma[3]
        m = g4 @ self.spinor @ g4
        images = apply(m, [sharp(z) for z in zeta], zero)
        return [sharp(x) for x in images]

    def spin_matrix(self) -> np.ndarray:
        """Gamma^spin(Lambda) entrywise; meaningful when S is numeric."""
        g4 = self.rep.cliff.gamma[3]
        return sharp_matrix(g4 @ self.spinor @ g4)

    def block_matrix(self) -> SuperMatrix:
        """Lambda (+) 1 on the vector blocks and S on every spinor block."""
        rep = self.rep
        f = rep.field
        m = SuperMatrix.zeros(rep.layout)
        block = np.empty((5, 5), dtype=object)
        block.fill(f.zero)
        block[:4, :4] = self.vector
        block[4, 4] = f.one
        for k in VECTOR_BLOCKS:
            m.set_block(k, k, block)
        for s in SPINOR_BLOCKS:
            m.set_block(s, s, self.spinor)
        return m

    # --- Checks ---

    def is_lorentz(self) -> bool:
        """Lambda^T eta Lambda = eta."""
        f = self.rep.field
        eta = zeros(f, 4)
        for k, sign in enumerate(self.rep.cliff.metric):
            eta[k, k] = f.rational(sign)
        return _same(self.vector.T @ eta @ self.vector, eta)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LorentzElement):
            return NotImplemented
        return _same(self.vector, other.vector) and _same(self.spinor, other.spinor)

    __hash__ = None  # type: ignore[assignment]


def scale_entry(w: Entry, a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    for idx, value in np.ndenumerate(a):
        out[idx] = w * value
    return out


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    return all(not (x - y) for x, y in zip(a.flat, b.flat))

