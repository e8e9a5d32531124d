"""
The 100x100 representation of the four-component superalgebra.

Generator blocks:
- rotation: 5x5 with (mu, nu) entry (hbar/i)(delta_beta,mu eta_alpha,nu - delta_alpha,mu eta_beta,nu)
- translation: 5x5 with -(i hbar/lambda) in row mu, column 5
- spin: 4x4, (hbar/2i)(gamma_alpha gamma_beta)^T or -(hbar/2i) gamma_alpha gamma_beta
- B_a: 5x4 with -(hbar/lambda)^(1/2) z8 (gamma^alpha C)_ab in row alpha, column b
- C_a: 4x5 with -(hbar/lambda)^(1/2) z8 in row a, column 5

Q(d, a) occupies every B and C cell of degree d, scaled by sqrt(kappa_d);
R(D, a) is the translation pattern at the table-A position of D.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from colorpoincare.algebra.clifford import CliffordData, default_clifford, scale, zeros
from colorpoincare.algebra.superalgebra import (
    BasisElement,
    CouplingConfig,
    StructureConstants,
)
from colorpoincare.core.errors import DegreeMismatchError, GradingError, LayoutError, UnknownElementError
from colorpoincare.core.grading import BICOLOR_NAMES, MONO_WHITE_NAMES, Grading
from colorpoincare.core.grassmann import Multivector
from colorpoincare.core.scalars import Scalar, ScalarField
from colorpoincare.evaluation.reports import Report
from colorpoincare.evaluation.runner import parallel_reports
from colorpoincare.representation.layout import (
    SPINOR_BLOCKS,
    VECTOR_BLOCKS,
    BlockLayout,
    block_layout,
)
from colorpoincare.representation.supermatrix import Entry, SuperMatrix

logger = logging.getLogger(__name__)


def sharp(x: Entry) -> Entry:
    """The # adjoint of a matrix entry: complex conjugation for scalars."""
    return x.adjoint() if isinstance(x, Multivector) else x.conjugate()


@dataclass(frozen=True)
class SupertranslationPairing:
    """Where Z_d Z_d' lands: target "P" or a bicolor sector, with its multiplicity."""
    target: str
    multiplicity: int


@dataclass
class ElementCoordinates:
    """
    Coordinates of a Lie-algebra element.

    omega[(alpha, beta)], t[mu] and u[(sector, a)] multiply (i/hbar) Gamma;
    u enters through its adjoint. psi[(sector, a)] are numeric supertranslation
    weights; zeta[(sector, a)] are Grassmann supertranslation parameters.
    """
    omega: Dict[Tuple[int, int], Entry] = field(default_factory=dict)
    t: Dict[int, Entry] = field(default_factory=dict)
    u: Dict[Tuple[str, int], Entry] = field(default_factory=dict)
    psi: Dict[Tuple[str, int], Entry] = field(default_factory=dict)
    zeta: Dict[Tuple[str, int], Multivector] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class Representation:
    """Generator matrices for one Clifford convention, coupling and layout."""

    cliff: CliffordData
    cfg: CouplingConfig
    layout: BlockLayout
    _cache: Dict = field(default_factory=dict, repr=False)

    @property
    def field(self) -> ScalarField:
        return self.layout.grading.field

    @property
    def grading(self) -> Grading:
        return self.layout.grading

    @property
    def hbar(self) -> Scalar:
        return self.cfg.units.hbar_scalar(self.field)

    @property
    def lam(self) -> Scalar:
        return self.cfg.units.lam_scalar(self.field)

    def _root(self) -> Scalar:
        """-(hbar/lambda)^(1/2) z8, the common factor of B_a and C_a."""
        f = self.field
        return -f.sqrt(self.hbar / self.lam) * f.z8()

    # --- Blocks ---

    def rotation_block(self, alpha: int, beta: int) -> np.ndarray:
        key = ("rot", alpha, beta)
        if key not in self._cache:
            f = self.field
            eta = self.cliff.metric
            hi = self.hbar / f.i()
            block = zeros(f, 5)
            block[beta - 1, alpha - 1] = hi * eta[alpha - 1]
            block[alpha - 1, beta - 1] = -hi * eta[beta - 1]
            self._cache[key] = block
        return self._cache[key]

    def translation_block(self, mu: int) -> np.ndarray:
        key = ("trans", mu)
        if key not in self._cache:
            f = self.field
            block = zeros(f, 5)
            block[mu - 1, 4] = -(f.i() * self.hbar / self.lam)
            self._cache[key] = block
        return self._cache[key]

    def spin_block(self, alpha: int, beta: int) -> np.ndarray:
        key = ("spin", alpha, beta)
        if key not in self._cache:
            f = self.field
            h2i = self.hbar / (f.i() * 2)
            pair = self.cliff.gamma_pair(alpha, beta)
            if self.cliff.spin_block == "transpose":
                block = scale(h2i, pair.T)
            else:
                block = scale(-h2i, pair)
            self._cache[key] = block
        return self._cache[key]

    def b_block(self, a: int) -> np.ndarray:
        key = ("B", a)
        if key not in self._cache:
            f = self.field
            root = self._root()
            block = zeros(f, 5, 4)
            for alpha in range(1, 5):
                gc = self.cliff.gamma_c(alpha)
                for b in range(1, 5):
                    block[alpha - 1, b - 1] = root * gc[a - 1, b - 1]
            self._cache[key] = block
        return self._cache[key]

    def c_block(self, a: int) -> np.ndarray:
        key = ("C", a)
        if key not in self._cache:
            block = zeros(self.field, 4, 5)
            block[a - 1, 4] = self._root()
            self._cache[key] = block
        return self._cache[key]

    # --- Generators ---

    def gamma(self, e: BasisElement) -> SuperMatrix:
        """Gamma(e) for a four-component basis element."""
        key = ("gamma", e)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        lay = self.layout
        f = self.field
        m = SuperMatrix.zeros(lay)
        if e.kind == "M":
            alpha, beta = e.index
            for k in VECTOR_BLOCKS:
                m.set_block(k, k, self.rotation_block(alpha, beta))
            for s in SPINOR_BLOCKS:
                m.set_block(s, s, self.spin_block(alpha, beta))
        elif e.kind == "P":
            for k in VECTOR_BLOCKS:
                m.set_block(k, k, self.translation_block(e.index[0]))
        elif e.kind == "Q":
            a = e.index[0]
            if not 1 <= a <= 4 or e.sector not in MONO_WHITE_NAMES:
                raise UnknownElementError(f"{e} is not a four-component supertranslation")
            root = self.cfg.sqrt_kappa(f, e.sector)
            for i, s in lay.cells_of_degree(e.sector, "B"):
                m.set_block(i, s, scale(root, self.b_block(a)))
            for s, i in lay.cells_of_degree(e.sector, "C"):
                m.set_block(s, i, scale(root, self.c_block(a)))
        elif e.kind == "R":
            if e.sector not in BICOLOR_NAMES:
                raise UnknownElementError(f"{e} has no bicolor sector")
            i, j = lay.position_of(e.sector)
            m.set_block(i, j, self.translation_block(e.index[0]))
        else:
            raise UnknownElementError(f"unknown basis element kind {e.kind!r}")
        self._cache[key] = m
        return m

    def identity(self) -> SuperMatrix:
        return identity_matrix(self.layout)

    # --- Elements ---

    def element_matrix(self, coords: ElementCoordinates) -> SuperMatrix:
        """
        (i/hbar)[sum omega Gamma(M) + t Gamma(P) + u^# Gamma(R)]
        + hbar^(-1/2) z8^-1 sum psi Gamma(Q)
        + (i/hbar^(1/2)) sum zeta^(a#) (gamma_4)_ab Gamma(Q_b).
        """
        f = self.field
        g = self.grading
        ih = f.i() / self.hbar
        acc = SuperMatrix.zeros(self.layout)

        def add(c: Entry, e: BasisElement):
            nonlocal acc
            if c:
                acc = acc + self.gamma(e).scale(c)

        for (alpha, beta), c in coords.omega.items():
            _expect_degree(c, g.zero, f"omega{alpha}{beta}")
            add(ih * c, BasisElement("M", (alpha, beta)))
        for mu, c in coords.t.items():
            _expect_degree(c, g.zero, f"t{mu}")
            add(ih * c, BasisElement("P", (mu,)))
        for (sector, a), c in coords.u.items():
            _expect_degree(c, g.named(sector), f"u[{sector}]{a}")
            add(ih * sharp(c), BasisElement("R", (a,), sector))
        if coords.psi:
            weight = (f.sqrt(self.hbar) * f.z8()).inverse()
            for (sector, a), c in coords.psi.items():
                _expect_degree(c, g.zero, f"psi[{sector}]{a}")
                add(weight * c, BasisElement("Q", (a,), sector))
        by_sector: Dict[str, List[Entry]] = {}
        for (sector, a), c in coords.zeta.items():
            _expect_degree(c, g.named(sector), f"zeta[{sector}]{a}")
            by_sector.setdefault(sector, [f.zero] * 4)[a - 1] = c
        for sector, values in by_sector.items():
            acc = acc + self.supertranslation_matrix(sector, values)
        return acc

    def supertranslation_matrix(self, sector: str, zeta: Sequence[Entry]) -> SuperMatrix:
        """Z_d = (i/hbar^(1/2)) sum_b v_b Gamma(Q_b) with v = gamma_4 zeta^#."""
        f = self.field
        coefficient = f.i() / f.sqrt(self.hbar)
        v = spinor_weights(self.cliff, zeta)
        acc = SuperMatrix.zeros(self.layout)
        for b in range(4):
            if v[b]:
                acc = acc + self.gamma(BasisElement("Q", (b + 1,), sector)).scale(coefficient * v[b])
        return acc


def identity_matrix(layout: BlockLayout) -> SuperMatrix:
    one = layout.grading.field.one
    return SuperMatrix(layout, {k: {k: one} for k in range(layout.dimension)})


def spinor_weights(cliff: CliffordData, zeta: Sequence[Entry]) -> List[Entry]:
    """v_b = sum_a zeta^(a#) (gamma_4)_ab."""
    g4 = cliff.gamma[3]
    f = cliff.field
    out: List[Entry] = []
    for b in range(4):
        total: Entry = f.zero
        for a in range(4):
            c = g4[a, b]
            if c and zeta[a]:
                total = total + sharp(zeta[a]) * c
        out.append(total)
    return out


def _expect_degree(value: Entry, degree, slot: str):
    if isinstance(value, Multivector) and value:
        d = value.degree()
        if d != degree:
            raise DegreeMismatchError(f"{slot} must have degree {degree}, got {value.degrees()}")


def make_representation(
    grading: Optional[Grading] = None,
    cliff: Optional[CliffordData] = None,
    cfg: Optional[CouplingConfig] = None,
) -> Representation:
    grading = grading or Grading()
    cliff = cliff or default_clifford(grading.field)
    if cliff.field is not grading.field:
        raise GradingError("Clifford data and grading use different coefficient fields")
    return Representation(cliff, cfg or CouplingConfig(), block_layout(grading))


def gamma_of(
    e: BasisElement,
    cliff: Optional[CliffordData] = None,
    cfg: Optional[CouplingConfig] = None,
    layout: Optional[BlockLayout] = None,
) -> SuperMatrix:
    grading = layout.grading if layout is not None else Grading()
    rep = make_representation(grading, cliff, cfg)
    return rep.gamma(e)


def element_matrix(coords: ElementCoordinates, rep: Optional[Representation] = None) -> SuperMatrix:
    return (rep or make_representation()).element_matrix(coords)


def graded_commutator(a: SuperMatrix, b: SuperMatrix, eps: Scalar) -> SuperMatrix:
    return a @ b - (b @ a).scale(eps)


# --- Layout pairings ---


def supertranslation_pairings(layout: BlockLayout) -> Dict[Tuple[str, str], SupertranslationPairing]:
    """
    For each ordered pair (d, d') the block positions where a B cell of degree d
    meets a C cell of degree d'. Four diagonal matches give the translation
    pattern; matches at one table-A position give that bicolor sector.
    """
    out: Dict[Tuple[str, str], SupertranslationPairing] = {}
    for d in MONO_WHITE_NAMES:
        b_cells = layout.cells_of_degree(d, "B")
        for e in MONO_WHITE_NAMES:
            c_cells = layout.cells_of_degree(e, "C")
            matches = [(i, j) for i, s in b_cells for s2, j in c_cells if s == s2]
            if not matches:
                continue
            if all(i == j for i, j in matches):
                counts = {k: sum(1 for i, _ in matches if i == k) for k in VECTOR_BLOCKS}
                if len(set(counts.values())) != 1 or not counts[0]:
                    raise LayoutError(f"uneven diagonal pairing for ({d}, {e}): {matches}")
                out[(d, e)] = SupertranslationPairing("P", counts[0])
                continue
            positions = set(matches)
            if len(positions) != 1:
                raise LayoutError(f"pairing ({d}, {e}) spreads over {sorted(positions)}")
            (i, j), = positions
            name = layout.degree_name(i, j)
            if name not in BICOLOR_NAMES:
                raise LayoutError(f"pairing ({d}, {e}) lands on non-bicolor cell ({i},{j})")
            out[(d, e)] = SupertranslationPairing(name, len(matches))
    return out


# --- Reports ---


def homomorphism_report(
    sc: StructureConstants,
    rep: Optional[Representation] = None,
    elements: Optional[Sequence[Union[BasisElement, str]]] = None,
    threads: Optional[int] = None,
) -> Report:
    """
    Check Gamma(a)Gamma(b) - eps(d_a, d_b)Gamma(b)Gamma(a) = Gamma([a, b]) on
    every ordered pair of the selected basis elements.
    """
    if sc.formulation != "four":
        raise GradingError("the 100x100 representation carries the four-component algebra only")
    rep = rep or make_representation(sc.grading)
    gammas = [rep.gamma(e) for e in sc.basis]
    positions = (
        list(range(len(sc.basis)))
        if elements is None
        else sorted({sc.position(e) for e in elements})
    )
    pairs = [(a, b) for a in positions for b in positions]

    def check(chunk: Sequence[Tuple[int, int]], report: Report):
        for a, b in chunk:
            report.add_case()
            lhs = graded_commutator(gammas[a], gammas[b], sc.eps(a, b))
            for k, c in sc.get(a, b).items():
                lhs = lhs - gammas[k].scale(c)
            if not lhs.is_zero():
                report.add_failure(
                    f"[{sc.basis[a].name}, {sc.basis[b].name}]",
                    lhs.render(limit=4),
                    "0",
                )

    config = {
        "cliff": rep.cliff.name,
        "n": sc.grading.n,
        "pairs": len(pairs),
        "kappa": rep.cfg.to_dict(),
    }
    return parallel_reports("homomorphism", pairs, check, threads, config)


def homogeneity_report(sc: StructureConstants, rep: Optional[Representation] = None) -> Report:
    """Each Gamma(e) is homogeneous of the degree of e."""
    rep = rep or make_representation(sc.grading)
    g = sc.grading
    report = Report(name="homogeneity", config={"elements": len(sc.basis)})
    for e in sc.basis:
        degrees = rep.gamma(e).degrees()
        report.check(
            degrees == [e.degree],
            f"degree of Gamma({e.name})",
            [g.name_of(d) for d in degrees],
            g.name_of(e.degree),  # type: ignore[arg-type]
        )
    report.complete()
    return report


def _rank(f: ScalarField, rows: List[List[Scalar]]) -> int:
    work = [list(r) for r in rows]
    rank = 0
    cols = len(work[0]) if work else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = work[rank][col].inverse()
        for r in range(len(work)):
            if r != rank and work[r][col]:
                factor = work[r][col] * inv
                work[r] = [x - factor * y for x, y in zip(work[r], work[rank])]
        rank += 1
    return rank


def faithfulness_report(rep: Optional[Representation] = None, block: int = 0) -> Report:
    """The ten Poincare generators restricted to one 5x5 diagonal block are independent."""
    rep = rep or make_representation()
    f = rep.field
    elements = [BasisElement("M", (a, b)) for a in range(1, 5) for b in range(a + 1, 5)]
    elements += [BasisElement("P", (mu,)) for mu in range(1, 5)]
    rows = []
    for e in elements:
        values = rep.gamma(e).block(block, block, f.zero)
        rows.append([values[i, j] for i in range(5) for j in range(5)])
    rank = _rank(f, rows)
    report = Report(name="faithfulness", config={"block": block})
    report.check(rank == len(elements), f"rank on block ({block},{block})", rank, len(elements))
    report.complete()
    return report


def poincare_elements() -> Iterable[BasisElement]:
    yield from (BasisElement("M", (a, b)) for a in range(1, 5) for b in range(a + 1, 5))
    yield from (BasisElement("P", (mu,)) for mu in range(1, 5))
