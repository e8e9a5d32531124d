"""
Structure constants of the graded Poincare superalgebra.

Two formulations share one basis layout:
- M(alpha, beta) for 1 <= alpha < beta <= 4 and P(mu): degree zero
- Q(d, a) for the eight white/antiwhite and monocolor degrees d
  (a in 1..2 for two components, 1..4 for four)
- R(dd', a) for the twelve bicolor degrees, a in 1..4

Each bracket relation is entered once in a fixed orientation; the reverse
orientation follows from table(b, a) = -eps(d_b, d_a) table(a, b).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np

from colorpoincare.algebra.clifford import CliffordData, PhaseChoices, SpinorPairing, conjugate
from colorpoincare.core.errors import GradingError, NotExactSquareError, UnknownElementError
from colorpoincare.core.grading import BICOLOR_NAMES, MONO_WHITE_NAMES, Degree, Grading
from colorpoincare.core.scalars import Scalar, ScalarField

logger = logging.getLogger(__name__)

FORMULATIONS = ("two", "four")
POSITIVE_SECTORS = ["1", "r", "g", "b"]
OPPOSITE = {"1": "1b", "r": "rb", "g": "gb", "b": "bb"}
OPPOSITE.update({v: k for k, v in list(OPPOSITE.items())})

# (d, d') pairs whose bracket carries (1 - q)/2 and (1 - q^-1)/2 respectively
BICOLOR_Q_PAIRS = [("r", "g"), ("g", "b"), ("b", "r"), ("rb", "gb"), ("gb", "bb"), ("bb", "rb")]
BICOLOR_QINV_PAIRS = [("r", "gb"), ("g", "bb"), ("b", "rb"), ("rb", "g"), ("gb", "b"), ("bb", "r")]
# white with anticolor, antiwhite with color, and the bicolor sector they land in
WHITE_PAIRS = {
    ("1", "rb"): "g+b",
    ("1", "gb"): "b+r",
    ("1", "bb"): "r+g",
    ("1b", "r"): "gb+bb",
    ("1b", "g"): "bb+rb",
    ("1b", "b"): "rb+gb",
}

Combination = Dict[int, Scalar]


@dataclass(frozen=True)
class BasisElement:
    kind: str  # "M", "P", "Q" or "R"
    index: Tuple[int, ...]
    sector: str = "0"
    degree: Optional[Degree] = field(default=None, compare=False)

    @property
    def name(self) -> str:
        if self.kind == "M":
            return f"M{self.index[0]}{self.index[1]}"
        if self.kind == "P":
            return f"P{self.index[0]}"
        return f"{self.kind}[{self.sector}]{self.index[0]}"

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class UnitConfig:
    """hbar and the length scale lambda of the translation blocks."""
    hbar: Union[int, str] = 1
    lam: Union[int, str] = 1

    def hbar_scalar(self, f: ScalarField) -> Scalar:
        return f.parse_rational(str(self.hbar))

    def lam_scalar(self, f: ScalarField) -> Scalar:
        return f.parse_rational(str(self.lam))


@dataclass(frozen=True)
class CouplingConfig:
    """kappa_d for d in {1, r, g, b}; kappa_{-d} = kappa_d."""
    kappa: Tuple[Tuple[str, Union[int, str]], ...] = (("1", 2), ("r", 2), ("g", 2), ("b", 2))
    units: UnitConfig = UnitConfig()

    @classmethod
    def uniform(cls, value: Union[int, str] = 2, units: Optional[UnitConfig] = None) -> "CouplingConfig":
        return cls(tuple((d, value) for d in POSITIVE_SECTORS), units or UnitConfig())

    def with_overrides(self, overrides: Mapping[str, Union[int, str]]) -> "CouplingConfig":
        values = dict(self.kappa)
        for key, value in overrides.items():
            base = key[:-1] if key.endswith("b") and key != "b" else key
            if base not in POSITIVE_SECTORS:
                raise GradingError(f"unknown kappa sector {key!r}")
            values[base] = value
        return CouplingConfig(tuple(values.items()), self.units)

    def kappa_of(self, f: ScalarField, sector: str) -> Scalar:
        base = sector if sector in POSITIVE_SECTORS else OPPOSITE[sector]
        return f.parse_rational(str(dict(self.kappa)[base]))

    def sqrt_kappa(self, f: ScalarField, sector: str) -> Scalar:
        kappa = self.kappa_of(f, sector)
        if not kappa:
            raise NotExactSquareError(f"kappa for sector {sector} must be nonzero")
        return f.sqrt(kappa)

    def to_dict(self) -> Dict[str, str]:
        return {k: str(v) for k, v in self.kappa}


class StructureConstants:
    """Immutable basis plus sparse bracket table keyed by basis positions."""

    def __init__(self, formulation: str, grading: Grading, basis: List[BasisElement]):
        self.formulation = formulation
        self.grading = grading
        self.field = grading.field
        self.basis = basis
        self.index = {e: k for k, e in enumerate(basis)}
        self._by_name = {e.name: k for k, e in enumerate(basis)}
        self.degrees: List[Degree] = [e.degree for e in basis]  # type: ignore[misc]
        self.table: Dict[Tuple[int, int], Combination] = {}

    def __len__(self) -> int:
        return len(self.basis)

    def position(self, e: Union[BasisElement, str, int]) -> int:
        if isinstance(e, int):
            if not 0 <= e < len(self.basis):
                raise UnknownElementError(f"basis position {e} out of range")
            return e
        if isinstance(e, str):
            if e not in self._by_name:
                raise UnknownElementError(f"unknown basis element {e!r}")
            return self._by_name[e]
        if e not in self.index:
            raise UnknownElementError(f"{e} is not in the {self.formulation}-component basis")
        return self.index[e]

    def element(self, name: str) -> BasisElement:
        return self.basis[self.position(name)]

    def get(self, a: int, b: int) -> Combination:
        return self.table.get((a, b), {})

    def eps(self, a: int, b: int) -> Scalar:
        return self.grading.epsilon(self.degrees[a], self.degrees[b])

    def nonzero_pairs(self) -> List[Tuple[int, int]]:
        return sorted(self.table)

    def render(self, combo: Combination) -> str:
        if not combo:
            return "0"
        parts = []
        for k in sorted(combo):
            c = combo[k].render()
            if " + " in c or " - " in c:
                c = f"({c})"
            parts.append(f"{c}*{self.basis[k].name}")
        return " + ".join(parts)

    # --- Construction helpers ---

    def _add(self, a: int, b: int, k: int, c: Scalar):
        if not c:
            return
        entry = self.table.setdefault((a, b), {})
        total = entry.get(k)
        total = c if total is None else total + c
        if total:
            entry[k] = total
        else:
            entry.pop(k, None)
            if not entry:
                del self.table[(a, b)]

    def _fill_antisymmetric(self):
        for (a, b), combo in list(self.table.items()):
            if (b, a) in self.table or a == b:
                continue
            factor = -self.eps(b, a)
            self.table[(b, a)] = {k: factor * c for k, c in combo.items()}


# --- Basis ---


def make_basis(formulation: str, grading: Grading) -> List[BasisElement]:
    if formulation not in FORMULATIONS:
        raise GradingError(f"formulation must be one of {FORMULATIONS}, got {formulation!r}")
    spinor = 2 if formulation == "two" else 4
    zero = grading.zero
    basis = [
        BasisElement("M", (a, b), "0", zero) for a in range(1, 5) for b in range(a + 1, 5)
    ]
    basis += [BasisElement("P", (mu,), "0", zero) for mu in range(1, 5)]
    for sector in MONO_WHITE_NAMES:
        basis += [
            BasisElement("Q", (a,), sector, grading.named(sector)) for a in range(1, spinor + 1)
        ]
    for sector in BICOLOR_NAMES:
        basis += [BasisElement("R", (a,), sector, grading.named(sector)) for a in range(1, 5)]
    return basis


def _m(a: int, b: int) -> BasisElement:
    return BasisElement("M", (a, b), "0")


def _p(mu: int) -> BasisElement:
    return BasisElement("P", (mu,), "0")


def _q(sector: str, a: int) -> BasisElement:
    return BasisElement("Q", (a,), sector)


def _r(sector: str, a: int) -> BasisElement:
    return BasisElement("R", (a,), sector)


# --- Shared relations ---


def _lorentz_relations(sc: StructureConstants, cliff: CliffordData, hbar: Scalar):
    """[M,M], [M,P] and [M,R]: the vector representation."""
    f = sc.field
    hi = hbar / f.i()
    eta = cliff.metric

    def m_coord(x: int, y: int) -> Optional[Tuple[int, Scalar]]:
        if x == y:
            return None
        if x < y:
            return sc.position(_m(x, y)), f.one
        return sc.position(_m(y, x)), -f.one

    pairs = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]
    for i, (a, b) in enumerate(pairs):
        ma = sc.position(_m(a, b))
        for c, d in pairs[i + 1:]:
            mc = sc.position(_m(c, d))
            terms = []
            if a == c:
                terms.append((eta[a - 1], b, d))
            if a == d:
                terms.append((-eta[a - 1], b, c))
            if b == c:
                terms.append((-eta[b - 1], a, d))
            if b == d:
                terms.append((eta[b - 1], a, c))
            for sign, x, y in terms:
                coord = m_coord(x, y)
                if coord:
                    sc._add(ma, mc, coord[0], hi * sign * coord[1])

        # vector action on P and on every R sector
        targets = [lambda mu: _p(mu)] + [
            (lambda mu, s=s: _r(s, mu)) for s in BICOLOR_NAMES
        ]
        for target in targets:
            for mu in range(1, 5):
                col = sc.position(target(mu))
                if a == mu:
                    sc._add(ma, col, sc.position(target(b)), hi * eta[a - 1])
                if b == mu:
                    sc._add(ma, col, sc.position(target(a)), -hi * eta[b - 1])


def _supertranslation_relations(
    sc: StructureConstants,
    cfg: CouplingConfig,
    phases: PhaseChoices,
    pairing,
    translation_sign: int,
    raise_index: bool,
    spinor_pairing: Optional[SpinorPairing] = None,
):
    """
    Q-Q brackets.

    pairing(A, a, b) is the spinor matrix entry multiplying the A-th vector
    component (gamma^A C for four components, sigma_A for two). spinor_pairing
    only applies to the two-component table.
    """
    f = sc.field
    spinor = 2 if sc.formulation == "two" else 4
    half = f.rational("1/2")
    q = f.q()
    metric = pairing.metric
    transpose_dotted = spinor_pairing is not None and spinor_pairing.order == "undotted_first"
    raise_bicolor = spinor_pairing is not None and spinor_pairing.raise_bicolor

    def spread(a_sector, b_sector, target, coefficient):
        # dotted generators are the negative sectors
        swap = transpose_dotted and a_sector not in POSITIVE_SECTORS and b_sector in POSITIVE_SECTORS
        raised = raise_index and (target is None or raise_bicolor)
        for a in range(1, spinor + 1):
            qa = sc.position(_q(a_sector, a))
            for b in range(1, spinor + 1):
                qb = sc.position(_q(b_sector, b))
                for mu in range(1, 5):
                    entry = pairing(mu, b, a) if swap else pairing(mu, a, b)
                    if not entry:
                        continue
                    c = coefficient * entry
                    if raised and metric[mu - 1] < 0:
                        c = -c
                    vec = _p(mu) if target is None else _r(target, mu)
                    sc._add(qa, qb, sc.position(vec), c)

    t_factor = phases.factor(f, "translation")
    for d in POSITIVE_SECTORS:
        kappa = cfg.kappa_of(f, d)
        spread(d, OPPOSITE[d], None, t_factor * translation_sign * kappa)

    b_factor = phases.factor(f, "bicolor")
    for pairs, weight in ((BICOLOR_Q_PAIRS, (1 - q) * half), (BICOLOR_QINV_PAIRS, (1 - q.inverse()) * half)):
        for d, e in pairs:
            roots = cfg.sqrt_kappa(f, d) * cfg.sqrt_kappa(f, e)
            spread(d, e, bicolor_sector(d, e), b_factor * weight * roots)

    w_factor = phases.factor(f, "white")
    for (d, e), target in WHITE_PAIRS.items():
        roots = cfg.sqrt_kappa(f, d) * cfg.sqrt_kappa(f, e)
        spread(d, e, target, -w_factor * roots)


def bicolor_sector(d: str, e: str) -> str:
    for name in BICOLOR_NAMES:
        if set(name.split("+")) == {d, e}:
            return name
    raise GradingError(f"{d}+{e} is not a bicolor sector")


class _Pairing:
    def __init__(self, matrices: List[np.ndarray], metric):
        self.matrices = matrices
        self.metric = metric

    def __call__(self, mu: int, a: int, b: int) -> Scalar:
        return self.matrices[mu - 1][a - 1, b - 1]


# --- Builders ---


def build_four_component(
    cfg: CouplingConfig,
    cliff: CliffordData,
    grading: Grading,
    phases: Optional[PhaseChoices] = None,
) -> StructureConstants:
    """90-element table with gamma^mu C pairings."""
    problems = cliff.problems()
    if problems:
        raise GradingError(f"invalid Clifford data {cliff.name}: {'; '.join(problems)}")
    f = grading.field
    sc = StructureConstants("four", grading, make_basis("four", grading))
    hbar = cfg.units.hbar_scalar(f)
    _lorentz_relations(sc, cliff, hbar)

    h2i = hbar / (f.i() * 2)
    for a in range(1, 5):
        for b in range(a + 1, 5):
            ma = sc.position(_m(a, b))
            gg = cliff.gamma_pair(a, b)
            for sector in MONO_WHITE_NAMES:
                for i in range(1, 5):
                    qi = sc.position(_q(sector, i))
                    for j in range(1, 5):
                        sc._add(ma, qi, sc.position(_q(sector, j)), h2i * gg[i - 1, j - 1])

    pairing = _Pairing([cliff.gamma_c(mu) for mu in range(1, 5)], cliff.metric)
    _supertranslation_relations(
        sc, cfg, phases or cliff.phase_choices, pairing, translation_sign=-1, raise_index=False
    )
    sc._fill_antisymmetric()
    logger.info(f"four-component table: {len(sc.basis)} elements, {len(sc.table)} nonzero pairs")
    return sc


def build_two_component(
    cfg: CouplingConfig,
    cliff: CliffordData,
    grading: Grading,
    phases: Optional[PhaseChoices] = None,
    spinor_pairing: Optional[SpinorPairing] = None,
) -> StructureConstants:
    """
    74-element table with Pauli pairings; printed normalisation unless phases are given.

    The sigma index placement defaults to the one carried by the Clifford data.
    """
    f = grading.field
    sc = StructureConstants("two", grading, make_basis("two", grading))
    hbar = cfg.units.hbar_scalar(f)
    _lorentz_relations(sc, cliff, hbar)

    h2i = hbar / (f.i() * 2)
    for a in range(1, 5):
        for b in range(a + 1, 5):
            ma = sc.position(_m(a, b))
            left = cliff.sigma_pair(b, a)
            right = conjugate(left)
            for sector in MONO_WHITE_NAMES:
                mat = left if sector in POSITIVE_SECTORS else right
                for i in range(1, 3):
                    qi = sc.position(_q(sector, i))
                    for j in range(1, 3):
                        sc._add(ma, qi, sc.position(_q(sector, j)), h2i * mat[i - 1, j - 1])

    pairing = _Pairing(cliff.pauli, cliff.metric)
    _supertranslation_relations(
        sc,
        cfg,
        phases or PhaseChoices.literal(),
        pairing,
        translation_sign=1,
        raise_index=True,
        spinor_pairing=spinor_pairing or cliff.spinor_pairing,
    )
    sc._fill_antisymmetric()
    logger.info(f"two-component table: {len(sc.basis)} elements, {len(sc.table)} nonzero pairs")
    return sc


def build(formulation: str, cfg: CouplingConfig, cliff: CliffordData, grading: Grading) -> StructureConstants:
    if formulation == "two":
        return build_two_component(cfg, cliff, grading)
    if formulation == "four":
        return build_four_component(cfg, cliff, grading)
    raise GradingError(f"formulation must be one of {FORMULATIONS}, got {formulation!r}")


# --- Brackets ---

Operand = Union[BasisElement, str, Mapping[BasisElement, Scalar]]


def _as_combination(sc: StructureConstants, x: Operand) -> Combination:
    if isinstance(x, (BasisElement, str)):
        return {sc.position(x): sc.field.one}
    return {sc.position(e): c for e, c in x.items() if c}


def bracket_positions(sc: StructureConstants, x: Combination, y: Combination) -> Combination:
    acc: Combination = {}
    for a, ca in x.items():
        for b, cb in y.items():
            entry = sc.table.get((a, b))
            if not entry:
                continue
            coef = ca * cb
            for k, c in entry.items():
                total = acc.get(k)
                acc[k] = coef * c if total is None else total + coef * c
    return {k: c for k, c in acc.items() if c}


def bracket(sc: StructureConstants, x: Operand, y: Operand) -> Dict[BasisElement, Scalar]:
    """Bilinear extension of the table."""
    result = bracket_positions(sc, _as_combination(sc, x), _as_combination(sc, y))
    return {sc.basis[k]: c for k, c in result.items()}


def combination(sc: StructureConstants, terms: Iterable[Tuple[Operand, Scalar]]) -> Combination:
    acc: Combination = {}
    for e, c in terms:
        k = sc.position(e)  # type: ignore[arg-type]
        acc[k] = acc[k] + c if k in acc else c
    return {k: c for k, c in acc.items() if c}
