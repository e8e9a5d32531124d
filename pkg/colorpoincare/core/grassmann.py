"""
The color Grassmann algebra.

Features:
- Generators theta_r/g/b, thetabar_r/g/b, eta, etabar and caller-declared parameters
- Normal ordering by adjacent transpositions weighted with the commutation factor
- The # adjoint (antilinear antiautomorphism)
- Graded left derivatives and degree-preserving substitution
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from colorpoincare.core.errors import DegreeMismatchError, UnknownElementError
from colorpoincare.core.grading import Degree, Grading
from colorpoincare.core.scalars import Scalar

logger = logging.getLogger(__name__)

ORDER_CACHE_SIZE = 65536

FAMILIES = [
    "theta_r", "theta_g", "theta_b",
    "thetabar_r", "thetabar_g", "thetabar_b",
    "eta", "etabar", "param",
]
FAMILY_RANK = {name: rank for rank, name in enumerate(FAMILIES)}

FAMILY_DEGREES = {
    "theta_r": (1, 0, 0),
    "theta_g": (0, 1, 0),
    "theta_b": (0, 0, 1),
    "thetabar_r": (-1, 0, 0),
    "thetabar_g": (0, -1, 0),
    "thetabar_b": (0, 0, -1),
    "eta": (1, 1, 1),
    "etabar": (-1, -1, -1),
}

# text names used by the expression grammar
FAMILY_SYMBOLS = {
    "theta_r": "th_r",
    "theta_g": "th_g",
    "theta_b": "th_b",
    "thetabar_r": "thb_r",
    "thetabar_g": "thb_g",
    "thetabar_b": "thb_b",
    "eta": "eta",
    "etabar": "etab",
}
SYMBOL_FAMILIES = {symbol: family for family, symbol in FAMILY_SYMBOLS.items()}


@dataclass(frozen=True, eq=False)
class Generator:
    family: str
    index: int
    degree: Degree
    name: str = ""
    key: Tuple[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", (FAMILY_RANK[self.family], self.index))

    def __eq__(self, other) -> bool:
        return isinstance(other, Generator) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "Generator") -> bool:
        return self.key < other.key

    def render(self) -> str:
        if self.family == "param":
            return self.name
        return f"{FAMILY_SYMBOLS[self.family]}[{self.index}]"

    __str__ = render


Word = Tuple[Generator, ...]


class GrassmannAlgebra:
    """One algebra instance: a grading, its generators and adjoint phases."""

    def __init__(self, grading: Optional[Grading] = None):
        self.grading = grading or Grading()
        self.field = self.grading.field
        self._generators: Dict[Tuple[str, int], Generator] = {}
        self._params: Dict[str, Generator] = {}
        self._phases: Dict[Generator, Scalar] = {}
        self._ordered = lru_cache(maxsize=ORDER_CACHE_SIZE)(self._sort_word)
        self.zero = Multivector(self, {})
        self.one = Multivector(self, {(): self.field.one})

    # --- Generators ---

    def generator(self, family: str, index: int) -> Generator:
        if family not in FAMILY_DEGREES:
            raise UnknownElementError(f"unknown generator family {family!r}")
        if index < 1:
            raise UnknownElementError(f"generator index must be positive, got {index}")
        key = (family, index)
        gen = self._generators.get(key)
        if gen is None:
            gen = Generator(family, index, self.grading.degree(*FAMILY_DEGREES[family]))
            self._generators[key] = gen
        return gen

    def declare_param(
        self, name: str, degree: Degree, phase: Optional[Scalar] = None
    ) -> Generator:
        """Register a parameter generator; ordering follows declaration order."""
        if name in self._params:
            existing = self._params[name]
            if existing.degree != self.grading.reduce(degree):
                raise DegreeMismatchError(f"parameter {name} redeclared with another degree")
            return existing
        gen = Generator("param", len(self._params) + 1, self.grading.reduce(degree), name)
        self._params[name] = gen
        if phase is not None:
            self._phases[gen] = phase
        return gen

    def param(self, name: str) -> Generator:
        if name not in self._params:
            raise UnknownElementError(f"undeclared parameter {name!r}")
        return self._params[name]

    def params(self) -> List[Generator]:
        return list(self._params.values())

    def adjoint_phase(self, gen: Generator) -> Scalar:
        f = self.field
        if gen.family in ("eta", "etabar"):
            return -f.i()
        if gen.family != "param":
            return f.i() * f.q()
        if gen in self._phases:
            return self._phases[gen]
        return self.default_phase(gen.degree)

    def default_phase(self, degree: Degree) -> Scalar:
        """Phase of the same-degree generator family; 1 for any other degree."""
        f = self.field
        g = self.grading
        if degree in (g.named("1"), g.named("1b")):
            return -f.i()
        if degree in [g.named(x) for x in ("r", "g", "b", "rb", "gb", "bb")]:
            return f.i() * f.q()
        return f.one

    def self_factor(self, gen: Generator) -> Scalar:
        return self.grading.epsilon(gen.degree, gen.degree)

    # --- Elements ---

    def scalar(self, value) -> "Multivector":
        c = self.field.coerce(value)
        return Multivector(self, {(): c}) if c else self.zero

    def gen(self, family_or_gen: Union[str, Generator], index: int = 1) -> "Multivector":
        gen = (
            family_or_gen
            if isinstance(family_or_gen, Generator)
            else self.generator(family_or_gen, index)
        )
        return Multivector(self, {(gen,): self.field.one})

    def word_degree(self, word: Word) -> Degree:
        return self.grading.sum(g.degree for g in word)

    def normal_order(self, word: Word) -> Tuple[Optional[Scalar], Word]:
        """Sort a word; returns (factor, sorted word) or (None, ()) when it vanishes."""
        return self._ordered(word)

    def _sort_word(self, word: Word) -> Tuple[Optional[Scalar], Word]:
        eps = self.grading.epsilon
        items = list(word)
        factor = self.field.one
        n = len(items)
        for end in range(n - 1, 0, -1):
            swapped = False
            for j in range(end):
                u, v = items[j], items[j + 1]
                if v.key < u.key:
                    # u v = eps(d_u, d_v) v u
                    factor = factor * eps(u.degree, v.degree)
                    items[j], items[j + 1] = v, u
                    swapped = True
            if not swapped:
                break
        result: Tuple[Optional[Scalar], Word] = (factor, tuple(items))
        for a, b in zip(items, items[1:]):
            if a == b and self.self_factor(a) != self.field.one:
                result = (None, ())
                break
        return result


class Multivector:
    """Finite sum of normal-ordered words with nonzero Scalar coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GrassmannAlgebra, terms: Dict[Word, Scalar]):
        self.algebra = algebra
        self.terms = terms

    # --- Arithmetic ---

    def _coerce(self, other) -> Optional["Multivector"]:
        if isinstance(other, Multivector):
            return other
        if isinstance(other, (Scalar, int)):
            return self.algebra.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        acc = dict(self.terms)
        for word, c in o.terms.items():
            total = acc.get(word)
            total = c if total is None else total + c
            if total:
                acc[word] = total
            else:
                acc.pop(word, None)
        return Multivector(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c: Scalar) -> "Multivector":
        if not c:
            return self.algebra.zero
        return Multivector(self.algebra, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(self.algebra.field.coerce(other))
        if not isinstance(other, Multivector):
            return NotImplemented
        if not self.terms or not other.terms:
            return self.algebra.zero
        order = self.algebra.normal_order
        acc: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if w1 and w2:
                    factor, word = order(w1 + w2)
                    if factor is None:
                        continue
                    coef = c1 * c2 * factor
                else:
                    word = w1 or w2
                    coef = c1 * c2
                total = acc.get(word)
                acc[word] = coef if total is None else total + coef
        return Multivector(self.algebra, {w: c for w, c in acc.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self.scale(self.algebra.field.coerce(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> "Multivector":
        result = self.algebra.one
        for _ in range(exponent):
            result = result * self
        return result

    # --- Structure ---

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> List[Degree]:
        return sorted({self.algebra.word_degree(w) for w in self.terms})

    def degree(self) -> Optional[Degree]:
        """The common degree of all terms, or None for zero or mixed elements."""
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def scalar_part(self) -> Scalar:
        return self.terms.get((), self.algebra.field.zero)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    def generators(self) -> List[Generator]:
        return sorted({g for w in self.terms for g in w})

    def homogeneous_parts(self) -> Dict[Degree, "Multivector"]:
        parts: Dict[Degree, Dict[Word, Scalar]] = {}
        for w, c in self.terms.items():
            parts.setdefault(self.algebra.word_degree(w), {})[w] = c
        return {d: Multivector(self.algebra, t) for d, t in parts.items()}

    # --- Operations ---

    def adjoint(self) -> "Multivector":
        """(x.1)^# = x*.1, (XY)^# = Y^# X^#, generators pick up their phases."""
        alg = self.algebra
        acc: Dict[Word, Scalar] = {}
        for w, c in self.terms.items():
            coef = c.conjugate()
            for g in w:
                coef = coef * alg.adjoint_phase(g)
            factor, word = alg.normal_order(tuple(reversed(w)))
            if factor is None:
                continue
            coef = coef * factor
            total = acc.get(word)
            acc[word] = coef if total is None else total + coef
        return Multivector(alg, {w: c for w, c in acc.items() if c})

    def derivative(self, x: Generator) -> "Multivector":
        """Left derivative: move x to the front, then drop it."""
        alg = self.algebra
        eps = alg.grading.epsilon
        acc: Dict[Word, Scalar] = {}
        for w, c in self.terms.items():
            factor = alg.field.one
            for p, g in enumerate(w):
                if g == x:
                    rest = w[:p] + w[p + 1:]
                    coef = c * factor
                    total = acc.get(rest)
                    acc[rest] = coef if total is None else total + coef
                # g x = eps(d_g, d_x) x g
                factor = factor * eps(g.degree, x.degree)
        return Multivector(alg, {w: c for w, c in acc.items() if c})

    def substitute(self, mapping: Mapping[Generator, "Multivector"]) -> "Multivector":
        """Degree-preserving algebra homomorphism sending generators to images."""
        alg = self.algebra
        for gen, image in mapping.items():
            d = image.degree()
            if d is not None and d != gen.degree:
                raise DegreeMismatchError(f"substitution for {gen} has degree {d}")
        result = alg.zero
        for w, c in self.terms.items():
            term = alg.scalar(c)
            for g in w:
                image = mapping.get(g)
                term = term * (image if image is not None else alg.gen(g))
                if not term:
                    break
            result = result + term
        return result

    def coefficient(self, word: Iterable[Generator]) -> Scalar:
        return self.terms.get(tuple(word), self.algebra.field.zero)

    # --- Rendering ---

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for w in sorted(self.terms, key=lambda w: (len(w), [g.key for g in w])):
            c = self.terms[w]
            coef = c.render()
            word = "*".join(g.render() for g in w)
            multi = " + " in coef or " - " in coef
            if not w:
                text = f"({coef})" if multi else coef
            elif multi:
                text = f"({coef})*{word}"
            elif coef == "1":
                text = word
            elif coef == "-1":
                text = f"-{word}"
            else:
                text = f"{coef}*{word}"
            pieces.append(text)
        out = pieces[0]
        for text in pieces[1:]:
            out += f" - {text[1:]}" if text.startswith("-") else f" + {text}"
        return out

    def __repr__(self) -> str:
        return self.render()

    __str__ = render


# --- Functional aliases ---


def mv_mul(a: Multivector, b: Multivector) -> Multivector:
    return a * b


def mv_adjoint(a: Multivector) -> Multivector:
    return a.adjoint()


def mv_derivative(x: Generator, f: Multivector) -> Multivector:
    return f.derivative(x)
