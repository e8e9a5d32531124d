"""
Text expressions for the color Grassmann algebra.

Grammar:
    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom ('^' exponent)?
    atom   := NAME '[' INT ']' | NAME | INT '/' INT | INT | '(' expr ')'

NAME is a generator family (th_r, th_g, th_b, thb_r, thb_g, thb_b, eta, etab)
when followed by an index, otherwise one of the scalars q, i or zK (a
primitive K-th root of unity). Negative exponents are accepted on units only.
"""

import logging
from fractions import Fraction
from typing import List, Optional

import lark

from colorpoincare.core.errors import ExpressionSyntaxError, UnknownElementError
from colorpoincare.core.grassmann import SYMBOL_FAMILIES, GrassmannAlgebra, Multivector

logger = logging.getLogger(__name__)

GRAMMAR = r"""
    ?start: expr

    ?expr: term
         | expr "+" term      -> add
         | expr "-" term      -> sub

    ?term: factor
         | term "*" factor    -> mul

    ?factor: power
           | "-" factor       -> neg

    ?power: atom
          | atom "^" exponent -> pow

    ?atom: NAME "[" INT "]"   -> generator
         | NAME               -> symbol
         | INT "/" INT        -> fraction
         | INT                -> integer
         | "(" expr ")"

    exponent: INT             -> positive
            | "-" INT         -> negative

    NAME: /[a-z][a-z0-9_]*/

    %import common.INT
    %import common.WS
    %ignore WS
"""

_parser = lark.Lark(GRAMMAR, start="start", parser="lalr")


class ExpressionTransformer(lark.Transformer):
    """Evaluates a parse tree into a normal-ordered Multivector."""

    def __init__(self, algebra: GrassmannAlgebra):
        super().__init__()
        self.algebra = algebra

    def add(self, items: List[Multivector]) -> Multivector:
        return items[0] + items[1]

    def sub(self, items: List[Multivector]) -> Multivector:
        return items[0] - items[1]

    def mul(self, items: List[Multivector]) -> Multivector:
        return items[0] * items[1]

    def neg(self, items: List[Multivector]) -> Multivector:
        return -items[0]

    def pow(self, items) -> Multivector:
        base, exponent = items
        if exponent >= 0:
            return base ** exponent
        if not base.is_scalar() or not base:
            raise ExpressionSyntaxError(f"negative power of a non-unit: {base}")
        return self.algebra.scalar(base.scalar_part() ** exponent)

    def positive(self, items) -> int:
        return int(items[0])

    def negative(self, items) -> int:
        return -int(items[0])

    def generator(self, items) -> Multivector:
        name, index = str(items[0]), int(items[1])
        family = SYMBOL_FAMILIES.get(name)
        if family is None:
            raise UnknownElementError(f"unknown generator {name!r}")
        if index < 1:
            raise ExpressionSyntaxError(f"generator indices start at 1, got {name}[{index}]")
        return self.algebra.gen(family, index)

    def symbol(self, items) -> Multivector:
        name = str(items[0])
        f = self.algebra.field
        if name == "q":
            return self.algebra.scalar(f.q())
        if name == "i":
            return self.algebra.scalar(f.i())
        if name.startswith("z") and name[1:].isdigit():
            order = int(name[1:])
            if order < 1:
                raise ExpressionSyntaxError(f"root of unity order must be at least 1, got {name}")
            return self.algebra.scalar(f.root_of_unity(order))
        raise UnknownElementError(f"unknown symbol {name!r}")

    def fraction(self, items) -> Multivector:
        numerator, denominator = int(items[0]), int(items[1])
        if denominator == 0:
            raise ExpressionSyntaxError(f"zero denominator in {numerator}/{denominator}")
        return self.algebra.scalar(Fraction(numerator, denominator))

    def integer(self, items) -> Multivector:
        return self.algebra.scalar(int(items[0]))


def parse_expr(text: str, algebra: Optional[GrassmannAlgebra] = None) -> Multivector:
    """
    Parse and normal-order an expression.

    Raises:
        ExpressionSyntaxError: Lexical or syntax error; position is the
            character offset when known.
        UnknownElementError: Unknown generator or symbol name.
    """
    algebra = algebra or GrassmannAlgebra()
    try:
        tree = _parser.parse(text)
    except lark.exceptions.UnexpectedInput as e:
        position = getattr(e, "pos_in_stream", None)
        raise ExpressionSyntaxError(f"cannot parse {text!r}: {e}", position) from e
    try:
        return ExpressionTransformer(algebra).transform(tree)
    except lark.exceptions.VisitError as e:
        raise e.orig_exc from e


def render(value: Multivector) -> str:
    """Canonical text that parse_expr reads back to an equal Multivector."""
    return value.render()
