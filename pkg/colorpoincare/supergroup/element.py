"""
Supergroup elements [Lambda | T | zeta | U] and their group law.

Features:
- rep_of_element: exp(N_U) exp(Z_1) ... exp(Z_bb) exp(N_T) L as a 100x100 SuperMatrix
- compose: closed product law with pairing multiplicities read from the layout
- compose_literal: the printed tau/rho formulas, kept for comparison
- inverse: printed inverse corrected by the residual translation it leaves
- randomized elements and verification reports against the matrix product
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from colorpoincare.core.errors import DegreeMismatchError, GradingError, NotNilpotentError
from colorpoincare.core.grading import BICOLOR_NAMES, MONO_WHITE_NAMES, Degree, Grading
from colorpoincare.core.grassmann import GrassmannAlgebra, Multivector
from colorpoincare.algebra.superalgebra import OPPOSITE, BasisElement
from colorpoincare.evaluation.reports import Report
from colorpoincare.evaluation.runner import parallel_reports
from colorpoincare.representation.gamma import (
    Representation,
    identity_matrix,
    make_representation,
    sharp,
    spinor_weights,
    supertranslation_pairings,
)
from colorpoincare.representation.supermatrix import Entry, SuperMatrix
from colorpoincare.supergroup.lorentz import LorentzElement

logger = logging.getLogger(__name__)

# factorisation order of the supertranslation exponentials
ZETA_ORDER = {name: k for k, name in enumerate(MONO_WHITE_NAMES)}
LORENTZ_PLANES = [(a, b) for a in range(1, 5) for b in range(a + 1, 5)]

# displayed rho families; the rest follow from the color cycle
LITERAL_RHO_FAMILIES: Dict[str, List[Tuple[str, str]]] = {
    "r+g": [("r", "g"), ("g", "r"), ("1b", "b"), ("b", "1b")],
    "rb+gb": [("rb", "gb"), ("gb", "rb"), ("1", "bb"), ("bb", "1")],
    "r+gb": [("r", "gb"), ("gb", "r")],
    "rb+g": [("rb", "g"), ("g", "rb")],
}
COLOR_CYCLE = {"1": "1", "1b": "1b", "r": "g", "g": "b", "b": "r", "rb": "gb", "gb": "bb", "bb": "rb"}


def cycle_name(name: str) -> str:
    """Apply r -> g -> b -> r to a degree name; white and antiwhite are fixed."""
    return "+".join(COLOR_CYCLE[part] for part in name.split("+"))


def literal_rho_families() -> Dict[str, List[Tuple[str, str]]]:
    families: Dict[str, List[Tuple[str, str]]] = {}
    for sector, pairs in LITERAL_RHO_FAMILIES.items():
        for _ in range(3):
            families[sector] = pairs
            sector = cycle_name(sector)
            pairs = [(cycle_name(d), cycle_name(e)) for d, e in pairs]
    return families


class ParameterAlgebra:
    """A Grassmann algebra handing out fresh parameter generators by degree."""

    def __init__(self, grading: Optional[Grading] = None, algebra: Optional[GrassmannAlgebra] = None):
        self.algebra = algebra or GrassmannAlgebra(grading)
        self.grading = self.algebra.grading
        self._counters: Dict[str, int] = {}

    def degree_of(self, name: Union[str, Degree]) -> Degree:
        if isinstance(name, Degree):
            return self.grading.reduce(name)
        return self.grading.zero if name == "0" else self.grading.named(name)

    def fresh(self, prefix: str, degree: Union[str, Degree]) -> Multivector:
        taken = {p.name for p in self.algebra.params()}
        k = self._counters.get(prefix, 0)
        while True:
            k += 1
            name = f"{prefix}{k}"
            if name not in taken:
                break
        self._counters[prefix] = k
        return self.algebra.gen(self.algebra.declare_param(name, self.degree_of(degree)))

    def coordinate(self, name: str, degree: Union[str, Degree]) -> Multivector:
        return self.algebra.gen(self.algebra.declare_param(name, self.degree_of(degree)))

    def even_nilpotent(self, prefix: str, sector: str = "r") -> Multivector:
        """x + x^# for x the product of two fresh parameters of opposite degree."""
        x = self.fresh(prefix, sector) * self.fresh(prefix, OPPOSITE[sector])
        return x + x.adjoint()


@dataclass(eq=False)
class GroupElement:
    group: "Supergroup"
    lorentz: LorentzElement
    T: List[Entry]
    zeta: Dict[str, List[Entry]]
    U: Dict[str, List[Entry]]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return (
            self.lorentz == other.lorentz
            and same_entries(self.T, other.T)
            and all(same_entries(self.zeta[d], other.zeta[d]) for d in MONO_WHITE_NAMES)
            and all(same_entries(self.U[d], other.U[d]) for d in BICOLOR_NAMES)
        )

    __hash__ = None  # type: ignore[assignment]

    def is_identity(self) -> bool:
        return self == self.group.identity()

    def translation_part(self) -> Tuple[List[Entry], Dict[str, List[Entry]], Dict[str, List[Entry]]]:
        return self.T, self.zeta, self.U

    def to_dict(self) -> Dict:
        return {
            "Lambda": [[str(x) for x in row] for row in self.lorentz.vector],
            "T": [str(x) for x in self.T],
            "zeta": {d: [str(x) for x in v] for d, v in self.zeta.items() if any(v)},
            "U": {d: [str(x) for x in v] for d, v in self.U.items() if any(v)},
        }


def same_entries(a: Sequence[Entry], b: Sequence[Entry]) -> bool:
    return len(a) == len(b) and all(not (x - y) for x, y in zip(a, b))


def exp_nilpotent(m: SuperMatrix) -> SuperMatrix:
    """1 + M, after checking M^2 = 0."""
    square = m @ m
    if not square.is_zero():
        i, j, _ = next(square.entries())
        lay = m.layout
        position = (lay.block_of(i), lay.block_of(j))
        raise NotNilpotentError(f"M^2 is nonzero in block {position}", position=position)
    return identity_matrix(m.layout) + m


class Supergroup:
    """Element factory and group law for one representation and parameter algebra."""

    def __init__(self, rep: Optional[Representation] = None, params: Optional[ParameterAlgebra] = None):
        self.rep = rep or make_representation()
        self.params = params or ParameterAlgebra(self.rep.grading)
        if self.params.grading.field is not self.rep.field:
            raise GradingError("parameter algebra and representation use different gradings")
        self.algebra = self.params.algebra
        self.grading = self.rep.grading
        self.pairings = supertranslation_pairings(self.rep.layout)

    # --- Elements ---

    @property
    def zero(self) -> Multivector:
        return self.algebra.zero

    def _entries(self, values: Optional[Sequence], degree: Degree, slot: str) -> List[Entry]:
        if values is None:
            return [self.zero] * 4
        if len(values) != 4:
            raise DegreeMismatchError(f"{slot} needs 4 components, got {len(values)}")
        out: List[Entry] = []
        for a, x in enumerate(values, 1):
            x = x if isinstance(x, Multivector) else self.algebra.scalar(x)
            if x and x.degree() != degree:
                raise DegreeMismatchError(
                    f"{slot}{a} must have degree {self.grading.name_of(degree)}, got {x.degrees()}"
                )
            out.append(x)
        return out

    def element(
        self,
        lorentz: Optional[LorentzElement] = None,
        T: Optional[Sequence] = None,
        zeta: Optional[Dict[str, Sequence]] = None,
        U: Optional[Dict[str, Sequence]] = None,
    ) -> GroupElement:
        g = self.grading
        zeta = zeta or {}
        U = U or {}
        for name in zeta:
            if name not in MONO_WHITE_NAMES:
                raise DegreeMismatchError(f"unknown supertranslation sector {name!r}")
        for name in U:
            if name not in BICOLOR_NAMES:
                raise DegreeMismatchError(f"unknown bicolor sector {name!r}")
        return GroupElement(
            group=self,
            lorentz=lorentz or LorentzElement.identity(self.rep),
            T=self._entries(T, g.zero, "T"),
            zeta={d: self._entries(zeta.get(d), g.named(d), f"zeta[{d}]") for d in MONO_WHITE_NAMES},
            U={d: self._entries(U.get(d), g.named(d), f"U[{d}]") for d in BICOLOR_NAMES},
        )

    def identity(self) -> GroupElement:
        return self.element()

    # --- Matrices ---

    def lorentz_matrix(self, g: GroupElement) -> SuperMatrix:
        return g.lorentz.block_matrix()

    def z_matrix(self, sector: str, zeta: Sequence[Entry]) -> SuperMatrix:
        return self.rep.supertranslation_matrix(sector, zeta)

    def translation_matrix(self, T: Sequence[Entry]) -> SuperMatrix:
        """(i/hbar) sum T^mu Gamma(P_mu)."""
        rep = self.rep
        ih = rep.field.i() / rep.hbar
        acc = SuperMatrix.zeros(rep.layout)
        for mu, t in enumerate(T, 1):
            if t:
                acc = acc + rep.gamma(BasisElement("P", (mu,))).scale(ih * t)
        return acc

    def u_matrix(self, U: Dict[str, Sequence[Entry]]) -> SuperMatrix:
        """(i/hbar) sum U^(a#) Gamma(R_a)."""
        rep = self.rep
        ih = rep.field.i() / rep.hbar
        acc = SuperMatrix.zeros(rep.layout)
        for sector, values in U.items():
            for a, u in enumerate(values, 1):
                if u:
                    acc = acc + rep.gamma(BasisElement("R", (a,), sector)).scale(ih * sharp(u))
        return acc

    def rep_of_element(self, g: GroupElement) -> SuperMatrix:
        result = exp_nilpotent(self.u_matrix(g.U))
        for d in MONO_WHITE_NAMES:
            if any(g.zeta[d]):
                result = result @ exp_nilpotent(self.z_matrix(d, g.zeta[d]))
        result = result @ exp_nilpotent(self.translation_matrix(g.T))
        return result @ self.lorentz_matrix(g)

    # --- Group law ---

    def _bilinear(self, x: Sequence[Entry], y: Sequence[Entry]) -> List[Entry]:
        """B^mu = sum_bc v_b (gamma^mu C)_bc w_c with v = gamma_4 x^#, w = gamma_4 y^#."""
        cliff = self.rep.cliff
        v = spinor_weights(cliff, x)
        w = spinor_weights(cliff, y)
        out: List[Entry] = []
        for mu in range(1, 5):
            gc = cliff.gamma_c(mu)
            total: Entry = self.zero
            for b in range(4):
                if not v[b]:
                    continue
                for c in range(4):
                    if gc[b, c] and w[c]:
                        total = total + (v[b] * gc[b, c]) * w[c]
            out.append(total)
        return out

    def pairing_terms(
        self, left: Dict[str, List[Entry]], right: Dict[str, List[Entry]], right_after: bool
    ) -> Tuple[List[Entry], Dict[str, List[Entry]]]:
        """
        tau and U^#-valued rho contributions of Z(left)_d Z(right)_d'.

        With right_after the pairs taken have d after d' in the factorisation
        order (sign +1); otherwise d before d' (sign -1).
        """
        f = self.rep.field
        cfg = self.rep.cfg
        tau: List[Entry] = [self.zero] * 4
        rho_sharp: Dict[str, List[Entry]] = {}
        for (d, e), pairing in self.pairings.items():
            if (ZETA_ORDER[d] > ZETA_ORDER[e]) != right_after or d == e:
                continue
            x, y = left[d], right[e]
            if not any(x) or not any(y):
                continue
            sign = 1 if right_after else -1
            coefficient = -f.i() * (sign * pairing.multiplicity) * cfg.sqrt_kappa(f, d) * cfg.sqrt_kappa(f, e)
            terms = self._bilinear(x, y)
            target = tau if pairing.target == "P" else rho_sharp.setdefault(pairing.target, [self.zero] * 4)
            for mu in range(4):
                if terms[mu]:
                    target[mu] = target[mu] + coefficient * terms[mu]
        return tau, rho_sharp

    def compose(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """[Lambda Lambda' | T + Lambda T' + tau | zeta + Gamma^spin(Lambda) zeta' | U + Lambda U' + rho]."""
        if g.group is not self or h.group is not self:
            raise GradingError("elements belong to another supergroup")
        L = g.lorentz
        zero = self.zero
        moved = {d: L.spin_action(h.zeta[d], zero) for d in MONO_WHITE_NAMES}
        tau_a, rho_a = self.pairing_terms(g.zeta, moved, right_after=True)
        tau_b, rho_b = self.pairing_terms(moved, g.zeta, right_after=False)
        T = [
            t + lt + a + b
            for t, lt, a, b in zip(g.T, L.vector_action(h.T, zero), tau_a, tau_b)
        ]
        zeta = {d: [x + y for x, y in zip(g.zeta[d], moved[d])] for d in MONO_WHITE_NAMES}
        U: Dict[str, List[Entry]] = {}
        for D in BICOLOR_NAMES:
            rho_sharp = [
                a + b
                for a, b in zip(rho_a.get(D, [zero] * 4), rho_b.get(D, [zero] * 4))
            ]
            rho = [sharp(x) for x in rho_sharp]
            U[D] = [u + lu + r for u, lu, r in zip(g.U[D], L.vector_action(h.U[D], zero), rho)]
        return GroupElement(self, L.compose(h.lorentz), T, zeta, U)

    def compose_literal(self, g: GroupElement, h: GroupElement) -> GroupElement:
        """The product law with tau and rho exactly as printed."""
        cliff = self.rep.cliff
        f = self.rep.field
        L = g.lorentz
        zero = self.zero
        moved = {d: L.spin_action(h.zeta[d], zero) for d in MONO_WHITE_NAMES}
        g4 = cliff.gamma[3]

        def contract(x: Sequence[Entry], mu: int, y: Sequence[Entry]) -> Entry:
            m = g4 @ cliff.gamma_upper(mu)
            total: Entry = zero
            for b in range(4):
                if not x[b]:
                    continue
                xb = sharp(x[b])
                for c in range(4):
                    if m[b, c] and y[c]:
                        total = total + (xb * m[b, c]) * y[c]
            return total * f.i()

        tau = [
            sum((contract(g.zeta[d], mu, moved[OPPOSITE[d]]) for d in MONO_WHITE_NAMES), zero)
            for mu in range(1, 5)
        ]
        T = [t + lt + x for t, lt, x in zip(g.T, L.vector_action(h.T, zero), tau)]
        zeta = {d: [x + y for x, y in zip(g.zeta[d], moved[d])] for d in MONO_WHITE_NAMES}
        U: Dict[str, List[Entry]] = {}
        for D, pairs in literal_rho_families().items():
            rho = [
                sum((contract(g.zeta[d], a, moved[e]) for d, e in pairs), zero)
                for a in range(1, 5)
            ]
            U[D] = [u + lu + r for u, lu, r in zip(g.U[D], L.vector_action(h.U[D], zero), rho)]
        return GroupElement(self, L.compose(h.lorentz), T, zeta, U)

    def printed_inverse(self, g: GroupElement) -> GroupElement:
        """[Lambda^-1 | -Lambda^-1 T | -Gamma^spin(Lambda^-1) zeta | -Lambda^-1 U]."""
        inv = g.lorentz.inverse()
        zero = self.zero
        return GroupElement(
            self,
            inv,
            [-x for x in inv.vector_action(g.T, zero)],
            {d: [-x for x in inv.spin_action(g.zeta[d], zero)] for d in MONO_WHITE_NAMES},
            {D: [-x for x in inv.vector_action(g.U[D], zero)] for D in BICOLOR_NAMES},
        )

    def inverse(self, g: GroupElement) -> GroupElement:
        """Two-sided inverse: the printed inverse with the residual [1|tau0|0|rho0] removed."""
        h0 = self.printed_inverse(g)
        residual = self.compose(g, h0)
        inv = g.lorentz.inverse()
        zero = self.zero

        def shifted(values: Sequence[Entry], extra: Sequence[Entry]) -> List[Entry]:
            return [-x for x in inv.vector_action([a + b for a, b in zip(values, extra)], zero)]

        return GroupElement(
            self,
            inv,
            shifted(g.T, residual.T),
            h0.zeta,
            {D: shifted(g.U[D], residual.U[D]) for D in BICOLOR_NAMES},
        )

    # --- Randomised elements ---

    def random_element(self, rng: np.random.Generator, active: int = 6, lorentz: bool = True) -> GroupElement:
        """An element with at most `active` fresh parameter generators."""
        budget = active
        L = LorentzElement.identity(self.rep)
        if lorentz:
            kind = int(rng.integers(0, 3))
            if kind == 1:
                planes = [(1, 2), (1, 3), (2, 3)]
                L = LorentzElement.quarter_turn(self.rep, *planes[int(rng.integers(0, 3))])
            elif kind == 2 and budget >= 2:
                plane = LORENTZ_PLANES[int(rng.integers(0, len(LORENTZ_PLANES)))]
                sector = MONO_WHITE_NAMES[int(rng.integers(0, 4))]
                L = LorentzElement.from_omega(self.rep, {plane: self.params.even_nilpotent("w", sector)})
                budget -= 2
        slots = [("T", "0", mu) for mu in range(4)]
        slots += [("zeta", d, a) for d in MONO_WHITE_NAMES for a in range(4)]
        slots += [("U", D, a) for D in BICOLOR_NAMES for a in range(4)]
        T: List[Entry] = [self.zero] * 4
        zeta = {d: [self.zero] * 4 for d in MONO_WHITE_NAMES}
        U = {D: [self.zero] * 4 for D in BICOLOR_NAMES}
        for k in rng.permutation(len(slots))[:budget]:
            slot, sector, a = slots[int(k)]
            coefficient = int(rng.choice([1, -1, 2]))
            x = self.params.fresh(slot[0].lower(), sector) * coefficient
            if slot == "T":
                T[a] = x
            elif slot == "zeta":
                zeta[sector][a] = x
            else:
                U[sector][a] = x
        return self.element(L, T, zeta, U)

    def samples(self, count: int, seed: int, active: int = 6) -> List[GroupElement]:
        rng = np.random.default_rng(seed)
        return [self.random_element(rng, active) for _ in range(count)]

    # --- Audits ---

    def dimension_audit(self) -> Report:
        """Parameter slots per degree: 10 at degree zero, 4 per generator and bicolor degree."""
        g = self.identity()
        report = Report(name="dimension[supergroup]", config={"expected_total": 90})
        report.check(len(LORENTZ_PLANES) + len(g.T) == 10, "degree 0 slots", len(LORENTZ_PLANES) + len(g.T), 10)
        for d in MONO_WHITE_NAMES:
            report.check(len(g.zeta[d]) == 4, f"slots of degree {d}", len(g.zeta[d]), 4)
        for D in BICOLOR_NAMES:
            report.check(len(g.U[D]) == 4, f"slots of degree {D}", len(g.U[D]), 4)
        total = len(LORENTZ_PLANES) + len(g.T) + sum(len(v) for v in g.zeta.values()) + sum(
            len(v) for v in g.U.values()
        )
        report.check(total == 90, "total", total, 90)
        return report.complete()


# --- Functional API ---


def rep_of_element(g: GroupElement) -> SuperMatrix:
    return g.group.rep_of_element(g)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return g.group.compose(g, h)


def compose_literal(g: GroupElement, h: GroupElement) -> GroupElement:
    return g.group.compose_literal(g, h)


def inverse(g: GroupElement) -> GroupElement:
    return g.group.inverse(g)


def random_element(group: Supergroup, rng: np.random.Generator, active: int = 6) -> GroupElement:
    return group.random_element(rng, active)


# --- Reports ---


def composition_report(group: Supergroup, samples: int = 100, seed: int = 0, threads: Optional[int] = None) -> Report:
    """Closed product law against the matrix product, plus degree-zero homogeneity."""
    elements = group.samples(2 * samples, seed)
    pairs = list(zip(elements[0::2], elements[1::2]))
    zero = group.grading.zero

    def check(chunk: Sequence[Tuple[GroupElement, GroupElement]], report: Report):
        for g, h in chunk:
            product = group.rep_of_element(g) @ group.rep_of_element(h)
            closed = group.rep_of_element(group.compose(g, h))
            residual = closed - product
            report.add_case()
            if not residual.is_zero():
                report.add_failure("Gamma(g h) = Gamma(g) Gamma(h)", residual.render(limit=4), "0")
            degrees = closed.degrees()
            report.check(degrees == [zero], "Gamma(g h) has degree zero", degrees, [zero])

    report = parallel_reports("supergroup.composition", pairs, check, threads, {"samples": samples})
    report.seed = seed
    return report


def group_law_report(group: Supergroup, samples: int = 100, seed: int = 0, threads: Optional[int] = None) -> Report:
    """Associativity, identity and two-sided inverses of the closed law."""
    elements = group.samples(3 * samples, seed)
    triples = list(zip(elements[0::3], elements[1::3], elements[2::3]))
    e = group.identity()

    def check(chunk: Sequence[Tuple[GroupElement, GroupElement, GroupElement]], report: Report):
        for g, h, k in chunk:
            left = group.compose(group.compose(g, h), k)
            right = group.compose(g, group.compose(h, k))
            report.add_case()
            if left != right:
                report.add_failure("associativity", left.to_dict(), right.to_dict())
            report.check(group.compose(g, e) == g, "g e = g")
            report.check(group.compose(e, g) == g, "e g = g")
            inv = group.inverse(g)
            for context, product in (("g g^-1 = e", group.compose(g, inv)), ("g^-1 g = e", group.compose(inv, g))):
                report.add_case()
                if not product.is_identity():
                    report.add_failure(context, product.to_dict(), "identity")

    report = parallel_reports("supergroup.law", triples, check, threads, {"samples": samples})
    report.seed = seed
    return report


def literal_law_report(group: Supergroup, samples: int = 20, seed: int = 0) -> Report:
    """
    How often the printed tau/rho and printed inverse agree with the closed law.

    Informational: disagreements are listed in the config, never as failures.
    """
    elements = group.samples(2 * samples, seed)
    report = Report(name="supergroup.literal", seed=seed, skipped=True)
    agree_product = 0
    agree_inverse = 0
    differences: List[str] = []
    for g, h in zip(elements[0::2], elements[1::2]):
        report.add_case()
        if group.compose_literal(g, h) == group.compose(g, h):
            agree_product += 1
        elif len(differences) < 5:
            differences.append(str(group.compose_literal(g, h).to_dict()))
        if group.compose(g, group.printed_inverse(g)).is_identity():
            agree_inverse += 1
    report.config = {
        "samples": samples,
        "product_agrees": agree_product,
        "printed_inverse_exact": agree_inverse,
        "differences": differences,
    }
    return report.complete()


def exp_precondition_report(group: Supergroup) -> Report:
    """Every Omega-free generator matrix squares to zero; rotation generators do not."""
    rep = group.rep
    report = Report(name="supergroup.exp")
    for mu in range(1, 5):
        m = rep.gamma(BasisElement("P", (mu,)))
        report.check((m @ m).is_zero(), f"Gamma(P{mu})^2 = 0")
    for d in MONO_WHITE_NAMES:
        x = group.params.fresh("e", d)
        m = group.z_matrix(d, [x, group.zero, group.zero, group.zero])
        report.check((m @ m).is_zero(), f"Z[{d}]^2 = 0")
    for D in BICOLOR_NAMES:
        m = rep.gamma(BasisElement("R", (1,), D))
        report.check((m @ m).is_zero(), f"Gamma(R[{D}]1)^2 = 0")
    try:
        exp_nilpotent(rep.gamma(BasisElement("M", (1, 2))))
        report.add_failure("exp of a rotation generator", "accepted", "NotNilpotentError")
    except NotNilpotentError:
        report.add_case()
    return report.complete()
