"""
Exact coefficient field arithmetic.

A Scalar is an element of Q(z_m)[q, q^-1], where z_m is a primitive m-th root
of unity. When the grading modulus n is positive, q is identified with
z_m^(m/n) and folded into the cyclotomic part, so every scalar has a single
q-power (zero). When n = 0, q stays a formal invertible symbol.

Canonical form: for each q-power k, a vector of phi(m) rationals giving the
coordinates of the coefficient in the power basis 1, z, ..., z^(phi(m)-1)
reduced modulo the m-th cyclotomic polynomial.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple, Union

from sympy import Poly, Symbol, cyclotomic_poly, totient
from sympy.polys.domains import QQ

from colorpoincare.core.errors import ExpressionSyntaxError, GradingError, NonInvertibleError, NotExactSquareError

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction, str]

_X = Symbol("x")


class ScalarField:
    """Context for one coefficient field Q(z_m) with q formal (n = 0) or q = z_n."""

    def __init__(self, n: int, m: int):
        if m <= 0 or m % 8 != 0:
            raise GradingError(f"root field order must be a positive multiple of 8, got {m}")
        if n > 0 and m % n != 0:
            raise GradingError(f"root field order {m} is not divisible by n={n}")
        self.n = n
        self.m = m
        self.phi = int(totient(m))
        modulus = Poly(cyclotomic_poly(m, _X), _X, domain=QQ)
        self._modulus = modulus
        self._powers = self._power_table(modulus)
        self._zero_vec = tuple(QQ(0) for _ in range(self.phi))
        self.zero = Scalar(self, ())
        self.one = self.rational(1)

    def _power_table(self, modulus: Poly) -> List[Tuple]:
        # coefficients of x^phi = -sum c_j x^j
        coeffs = [QQ.convert(c) for c in reversed(modulus.all_coeffs())]
        tail = [-c for c in coeffs[: self.phi]]
        table = []
        vec = [QQ(0)] * self.phi
        vec[0] = QQ(1)
        for _ in range(self.m):
            table.append(tuple(vec))
            top = vec[-1]
            vec = [QQ(0)] + vec[:-1]
            if top:
                vec = [v + top * t for v, t in zip(vec, tail)]
        return table

    @property
    def key(self) -> Tuple[int, int]:
        return (self.n, self.m)

    # --- Constructors ---

    def rational(self, value: Rational) -> "Scalar":
        c = to_qq(value)
        if not c:
            return self.zero
        vec = list(self._zero_vec)
        vec[0] = c
        return Scalar(self, ((0, tuple(vec)),))

    def parse_rational(self, text: str) -> "Scalar":
        """'-3', '1/2' or '0.25' as an exact rational scalar."""
        try:
            return self.rational(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ExpressionSyntaxError(f"not a rational number: {text!r}") from e

    def coerce(self, value: Union["Scalar", Rational]) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise GradingError("scalars from different coefficient fields")
            return value
        return self.rational(value)

    def zeta(self, power: int = 1) -> "Scalar":
        """z_m^power."""
        return Scalar(self, ((0, self._powers[power % self.m]),))

    def root_of_unity(self, order: int, power: int = 1) -> "Scalar":
        """z_order^power, for an order dividing m."""
        if self.m % order != 0:
            raise GradingError(f"z{order} is not in Q(z{self.m})")
        return self.zeta(power * (self.m // order))

    def i(self) -> "Scalar":
        return self.root_of_unity(4)

    def z8(self) -> "Scalar":
        return self.root_of_unity(8)

    def sqrt2(self) -> "Scalar":
        z = self.z8()
        return z + z.conjugate()

    def q(self, power: int = 1) -> "Scalar":
        if self.n > 0:
            return self.zeta(power * (self.m // self.n))
        vec = list(self._zero_vec)
        vec[0] = QQ(1)
        return Scalar(self, ((power, tuple(vec)),))

    # --- Helpers ---

    def sqrt(self, value: Union["Scalar", Rational]) -> "Scalar":
        """Exact square root of a rational r, 2r^2 or their negatives."""
        x = self.coerce(value)
        r = x.as_rational()
        if r is None:
            raise NotExactSquareError(f"square root of non-rational scalar {x}")
        if not r:
            return self.zero
        negative = r < 0
        a = -r if negative else r
        root = _rational_sqrt(a)
        if root is not None:
            result = self.rational(root)
        else:
            half_root = _rational_sqrt(a / 2)
            if half_root is None:
                raise NotExactSquareError(f"{a} is not a square in Q(z{self.m})")
            result = self.rational(half_root) * self.sqrt2()
        return result * self.i() if negative else result

    def _mul_vec(self, u: Tuple, v: Tuple) -> Tuple:
        raw = [QQ(0)] * (2 * self.phi - 1)
        for a, ca in enumerate(u):
            if not ca:
                continue
            for b, cb in enumerate(v):
                if cb:
                    raw[a + b] += ca * cb
        return self._reduce(raw)

    def _reduce(self, raw: Iterable) -> Tuple:
        out = list(self._zero_vec)
        for power, c in enumerate(raw):
            if not c:
                continue
            if power < self.phi:
                out[power] += c
            else:
                for j, t in enumerate(self._powers[power % self.m]):
                    if t:
                        out[j] += c * t
        return tuple(out)

    def _invert_vec(self, v: Tuple) -> Tuple:
        poly = Poly(list(reversed(v)), _X, domain=QQ)
        try:
            inv = poly.invert(self._modulus)
        except Exception as exc:  # sympy raises NotInvertible
            raise NonInvertibleError(f"element is not invertible: {exc}") from exc
        coeffs = [QQ.convert(c) for c in reversed(inv.all_coeffs())]
        return self._reduce(coeffs)

    def __repr__(self) -> str:
        return f"ScalarField(n={self.n}, m={self.m})"


@lru_cache(maxsize=None)
def get_field(n: int, m: int) -> ScalarField:
    """Shared field instance per (n, m)."""
    return ScalarField(n, m)


def to_qq(value: Rational):
    if isinstance(value, str):
        value = Fraction(value.strip())
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def _rational_sqrt(a) -> Optional[Fraction]:
    num, den = int(a.numerator), int(a.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Scalar:
    """Immutable exact element of a ScalarField."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field: ScalarField, terms: Tuple[Tuple[int, Tuple], ...]):
        self.field = field
        self.terms = terms
        self._hash: Optional[int] = None

    @classmethod
    def _from_dict(cls, field: ScalarField, terms: Dict[int, Tuple]) -> "Scalar":
        return cls(field, tuple(sorted((k, v) for k, v in terms.items() if any(v))))

    # --- Arithmetic ---

    def _other(self, other) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise GradingError("scalars from different coefficient fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        acc = dict(self.terms)
        for k, v in o.terms:
            if k in acc:
                acc[k] = tuple(a + b for a, b in zip(acc[k], v))
            else:
                acc[k] = v
        return Scalar._from_dict(self.field, acc)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, tuple((k, tuple(-c for c in v)) for k, v in self.terms))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return self.field.zero
        acc: Dict[int, List] = {}
        for k1, v1 in self.terms:
            for k2, v2 in o.terms:
                prod = self.field._mul_vec(v1, v2)
                k = k1 + k2
                if k in acc:
                    acc[k] = [a + b for a, b in zip(acc[k], prod)]
                else:
                    acc[k] = list(prod)
        return Scalar._from_dict(self.field, {k: tuple(v) for k, v in acc.items()})

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.terms:
            raise NonInvertibleError("division by zero scalar")
        if len(self.terms) > 1:
            raise NonInvertibleError(f"{self} is not a unit (several powers of q)")
        k, vec = self.terms[0]
        return Scalar(self.field, ((-k, self.field._invert_vec(vec)),))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.field.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "Scalar":
        """z -> z^-1, q -> q^-1, rationals fixed."""
        f = self.field
        acc: Dict[int, Tuple] = {}
        for k, vec in self.terms:
            out = list(f._zero_vec)
            for a, c in enumerate(vec):
                if c:
                    for j, t in enumerate(f._powers[(-a) % f.m]):
                        if t:
                            out[j] += c * t
            acc[-k] = tuple(out)
        return Scalar._from_dict(f, acc)

    # --- Queries ---

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def as_rational(self) -> Optional[Fraction]:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) != 1:
            return None
        k, vec = self.terms[0]
        if k != 0 or any(vec[1:]):
            return None
        c = vec[0]
        return Fraction(int(c.numerator), int(c.denominator))

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field is other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.field.rational(other).terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field.key, self.terms))
        return self._hash

    # --- Rendering ---

    def render(self) -> str:
        parts: List[Tuple[bool, str]] = []
        name = f"z{self.field.m}"
        for k, vec in self.terms:
            for a, c in enumerate(vec):
                if not c:
                    continue
                symbols = []
                if a:
                    symbols.append(name if a == 1 else f"{name}^{a}")
                if k:
                    symbols.append("q" if k == 1 else f"q^{k}")
                negative = c < 0
                mag = -c if negative else c
                frac = Fraction(int(mag.numerator), int(mag.denominator))
                if symbols and frac == 1:
                    text = "*".join(symbols)
                else:
                    text = "*".join([str(frac)] + symbols)
                parts.append((negative, text))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for negative, text in parts[1:]:
            out += (" - " if negative else " + ") + text
        return out

    def __repr__(self) -> str:
        return self.render()

    __str__ = render
