"""
Differential operators of the superalgebra on scalar superfields.

Translations act as P(P_mu) = (hbar/i) d/dX^mu and P(R) = (hbar/i) d/dOmega.
Rotations and supertranslations are read off the bracket table: P(M) moves
every coordinate by the matrix of ad(M) on the translation-type elements,
and P(Q_a) = (hbar^(1/2)/i) d/dXi^a plus a Xi-linear shift of the X and
Omega coordinates along [Q, Q_a]. Operators are graded left derivations,
stored by their values on the coordinate generators.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from colorpoincare.algebra.superalgebra import BasisElement, StructureConstants, build_four_component
from colorpoincare.core.errors import UnknownElementError
from colorpoincare.core.grading import BICOLOR_NAMES, MONO_WHITE_NAMES, Degree
from colorpoincare.core.grassmann import Generator, GrassmannAlgebra, Multivector
from colorpoincare.core.scalars import Scalar
from colorpoincare.evaluation.reports import Report
from colorpoincare.evaluation.runner import parallel_reports
from colorpoincare.representation.gamma import spinor_weights
from colorpoincare.representation.supermatrix import Entry
from colorpoincare.superspace.point import Superfield, Superspace

logger = logging.getLogger(__name__)

OPERATOR_KINDS = ("M", "P", "Q", "R")


@dataclass(eq=False)
class DiffOperator:
    """
    D = sum_x c_x d/dx with c_x on the left.

    degree is the degree of the algebra element the operator represents;
    D lowers degrees by it.
    """
    algebra: GrassmannAlgebra
    coefficients: Dict[Generator, Multivector]
    degree: Degree

    def apply(self, phi: Superfield) -> Superfield:
        acc = self.algebra.zero
        for x in phi.generators():
            c = self.coefficients.get(x)
            if not c:
                continue
            d = phi.derivative(x)
            if d:
                acc = acc + c * d
        return acc

    __call__ = apply

    def on(self, x: Generator) -> Multivector:
        return self.coefficients.get(x, self.algebra.zero)

    def scale(self, c: Union[Scalar, int]) -> "DiffOperator":
        coefficients = {x: v * c for x, v in self.coefficients.items()}
        return DiffOperator(self.algebra, {x: v for x, v in coefficients.items() if v}, self.degree)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        coefficients = dict(self.coefficients)
        for x, v in other.coefficients.items():
            total = coefficients[x] + v if x in coefficients else v
            if total:
                coefficients[x] = total
            else:
                coefficients.pop(x, None)
        return DiffOperator(self.algebra, coefficients, self.degree)

    def __neg__(self) -> "DiffOperator":
        return self.scale(-1)

    def bracket(self, other: "DiffOperator") -> "DiffOperator":
        """[A, B] = A B - eps(d_A, d_B) B A, evaluated on coordinates."""
        g = self.algebra.grading
        eps = g.epsilon(self.degree, other.degree)
        coefficients: Dict[Generator, Multivector] = {}
        for x in set(self.coefficients) | set(other.coefficients):
            value = self.apply(other.on(x)) - other.apply(self.on(x)) * eps
            if value:
                coefficients[x] = value
        return DiffOperator(self.algebra, coefficients, g.add(self.degree, other.degree))

    def is_zero(self) -> bool:
        return not any(self.coefficients.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        keys = set(self.coefficients) | set(other.coefficients)
        return all(not (self.on(x) - other.on(x)) for x in keys)

    __hash__ = None  # type: ignore[assignment]

    def render(self) -> str:
        parts = [
            f"({c})*d/d{x.render()}" for x, c in sorted(self.coefficients.items()) if c
        ]
        return " + ".join(parts) or "0"


class OperatorRepresentation:
    """
    operator_of for every four-component basis element over one superspace.

    sign is the global s in [P(a), P(b)] = s P([a, b]); the rotation and
    supertranslation normalisations are fixed by it.
    """

    def __init__(
        self,
        space: Optional[Superspace] = None,
        sc: Optional[StructureConstants] = None,
        sign: int = -1,
    ):
        self.space = space or Superspace()
        self.group = self.space.group
        self.rep = self.group.rep
        self.algebra = self.group.algebra
        self.sc = sc or build_four_component(self.rep.cfg, self.rep.cliff, self.rep.grading)
        self.sign = sign
        self._cache: Dict[BasisElement, DiffOperator] = {}
        self._coordinates = self._coordinate_map()
        self._supercharges = [k for k, e in enumerate(self.sc.basis) if e.kind == "Q"]

    def _coordinate_map(self) -> Dict[int, Multivector]:
        """Basis position of P, Q and R elements to the matching coordinate."""
        space, sc = self.space, self.sc
        out: Dict[int, Multivector] = {}
        for mu in range(1, 5):
            out[sc.position(BasisElement("P", (mu,)))] = space.X[mu - 1]
        for a in range(1, 5):
            for d in MONO_WHITE_NAMES:
                out[sc.position(BasisElement("Q", (a,), d))] = space.Xi[d][a - 1]
            for D in BICOLOR_NAMES:
                out[sc.position(BasisElement("R", (a,), D))] = space.Omega[D][a - 1]
        return out

    def _generator(self, k: int) -> Generator:
        return self._coordinates[k].generators()[0]

    def _hbar_over_i(self) -> Scalar:
        return self.rep.hbar / self.rep.field.i()

    def operator_of(self, e: BasisElement) -> DiffOperator:
        cached = self._cache.get(e)
        if cached is not None:
            return cached
        if e.kind not in OPERATOR_KINDS:
            raise UnknownElementError(f"unknown basis element kind {e.kind!r}")
        k = self.sc.position(e)
        if e.kind in ("P", "R"):
            op = DiffOperator(
                self.algebra,
                {self._generator(k): self.algebra.scalar(self._hbar_over_i())},
                self.sc.degrees[k],
            )
        elif e.kind == "M":
            op = self._rotation(k)
        else:
            op = self._supertranslation(k)
        self._cache[e] = op
        return op

    def _accumulate(self, coefficients: Dict[Generator, Multivector], k: int, value: Multivector):
        gen = self._generator(k)
        total = coefficients[gen] + value if gen in coefficients else value
        if total:
            coefficients[gen] = total
        else:
            coefficients.pop(gen, None)

    def _rotation(self, m: int) -> DiffOperator:
        """P(M)(y_J) = -s sum_L y_L c_(M L)^J over the coordinates y."""
        factor = -self.sign
        coefficients: Dict[Generator, Multivector] = {}
        for l, y in self._coordinates.items():
            for j, c in self.sc.get(m, l).items():
                self._accumulate(coefficients, j, y * (c * factor))
        return DiffOperator(self.algebra, coefficients, self.sc.degrees[m])

    def _supertranslation(self, a: int) -> DiffOperator:
        """(hbar^(1/2)/i) d/dXi^a + (s hbar^(1/2)/2) sum_c Xi^c c_(Q_c Q_a)^K d/dx^K."""
        f = self.rep.field
        root = f.sqrt(self.rep.hbar)
        shift = root * f.rational("1/2") * self.sign
        coefficients: Dict[Generator, Multivector] = {
            self._generator(a): self.algebra.scalar(root / f.i())
        }
        for c in self._supercharges:
            for k, value in self.sc.get(c, a).items():
                self._accumulate(coefficients, k, self._coordinates[c] * (value * shift))
        return DiffOperator(self.algebra, coefficients, self.sc.degrees[a])

    def combination(self, sc: StructureConstants, combo: Dict[int, Scalar]) -> Optional[DiffOperator]:
        result: Optional[DiffOperator] = None
        for k, c in combo.items():
            term = self.operator_of(sc.basis[k]).scale(c)
            result = term if result is None else result + term
        return result


def operator_of(e: BasisElement, ops: Optional[OperatorRepresentation] = None) -> DiffOperator:
    return (ops or OperatorRepresentation()).operator_of(e)


def delta_zeta(
    zeta: Dict[str, Sequence[Entry]], phi: Superfield, ops: Optional[OperatorRepresentation] = None
) -> Superfield:
    """sum (i/hbar^(1/2)) zeta^(a#) (gamma_4)_ab P(Q_b) applied to phi."""
    ops = ops or OperatorRepresentation()
    rep = ops.rep
    f = rep.field
    coefficient = f.i() / f.sqrt(rep.hbar)
    acc = ops.algebra.zero
    for sector, values in zeta.items():
        v = spinor_weights(rep.cliff, values)
        for b in range(4):
            if v[b]:
                image = ops.operator_of(BasisElement("Q", (b + 1,), sector)).apply(phi)
                if image:
                    acc = acc + (v[b] * coefficient) * image
    return acc


def operator_bracket_report(
    sc: StructureConstants,
    ops: Optional[OperatorRepresentation] = None,
    elements: Optional[Sequence[Union[BasisElement, str]]] = None,
    threads: Optional[int] = None,
) -> Report:
    """
    Compare [P(a), P(b)] with s P([a, b]) for one global sign s.

    Derivations agree once they agree on every coordinate generator, so the
    comparison runs on coordinates. The sign fitting the most pairs is kept
    and the pairs it misses are listed.
    """
    ops = ops or OperatorRepresentation(sc=sc)
    positions = (
        list(range(len(sc.basis)))
        if elements is None
        else sorted({sc.position(e) for e in elements})
    )
    for k in positions:
        ops.operator_of(sc.basis[k])
    pairs = [(a, b) for a in positions for b in positions]
    outcomes: List[Tuple[int, int, bool, bool]] = []

    def check(chunk: Sequence[Tuple[int, int]], report: Report):
        for a, b in chunk:
            report.add_case()
            left = ops.operator_of(sc.basis[a]).bracket(ops.operator_of(sc.basis[b]))
            right = ops.combination(sc, sc.get(a, b))
            if right is None:
                agree = left.is_zero()
                outcomes.append((a, b, agree, agree))
            else:
                outcomes.append((a, b, left == right, left == -right))

    report = parallel_reports(
        "superspace.operators", pairs, check, threads, {"elements": len(positions)}
    )
    plus = sum(1 for _, _, p, _ in outcomes if p)
    minus = sum(1 for _, _, _, m in outcomes if m)
    sign = -1 if minus >= plus else 1
    for a, b, p, m in sorted(outcomes):
        if not (m if sign < 0 else p):
            report.add_failure(
                f"[P({sc.basis[a].name}), P({sc.basis[b].name})]",
                "bracket",
                f"{sign} * P({sc.render(sc.get(a, b))})",
            )
    report.config.update({"sign": sign, "plus_matches": plus, "minus_matches": minus})
    logger.info(f"operator brackets: sign {sign}, {report.failure_count} mismatches")
    return report
