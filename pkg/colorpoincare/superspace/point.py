"""
Superspace points and the supergroup action.

A point (X, Xi, Omega) is identified with the coset of [1 | X | Xi | Omega];
an element g sends it to the translational part of g [1 | X | Xi | Omega].
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from colorpoincare.core.grading import BICOLOR_NAMES, MONO_WHITE_NAMES
from colorpoincare.core.grassmann import Generator, Multivector
from colorpoincare.evaluation.reports import Report
from colorpoincare.representation.gamma import sharp
from colorpoincare.representation.supermatrix import Entry
from colorpoincare.supergroup.element import GroupElement, Supergroup, same_entries
from colorpoincare.supergroup.lorentz import LorentzElement

logger = logging.getLogger(__name__)

# scalar superfields are polynomials in the coordinate generators
Superfield = Multivector


@dataclass(eq=False)
class SuperPoint:
    space: "Superspace"
    X: List[Entry]
    Xi: Dict[str, List[Entry]]
    Omega: Dict[str, List[Entry]]

    def as_element(self) -> GroupElement:
        return self.space.group.element(T=self.X, zeta=self.Xi, U=self.Omega)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPoint):
            return NotImplemented
        return (
            same_entries(self.X, other.X)
            and all(same_entries(self.Xi[d], other.Xi[d]) for d in MONO_WHITE_NAMES)
            and all(same_entries(self.Omega[D], other.Omega[D]) for D in BICOLOR_NAMES)
        )

    __hash__ = None  # type: ignore[assignment]

    def to_dict(self) -> Dict:
        return {
            "X": [str(x) for x in self.X],
            "Xi": {d: [str(x) for x in v] for d, v in self.Xi.items() if any(v)},
            "Omega": {D: [str(x) for x in v] for D, v in self.Omega.items() if any(v)},
        }


class Superspace:
    """Coordinate generators X^mu, Xi^(a_d) and Omega^(a_dd') over one supergroup."""

    def __init__(self, group: Optional[Supergroup] = None):
        self.group = group or Supergroup()
        params = self.group.params
        self.X = [params.coordinate(f"X{mu}", "0") for mu in range(1, 5)]
        self.Xi = {d: [params.coordinate(f"Xi[{d}]{a}", d) for a in range(1, 5)] for d in MONO_WHITE_NAMES}
        self.Omega = {
            D: [params.coordinate(f"Om[{D}]{a}", D) for a in range(1, 5)] for D in BICOLOR_NAMES
        }

    @property
    def algebra(self):
        return self.group.algebra

    def coordinates(self) -> List[Generator]:
        """All coordinate generators, X first."""
        values = list(self.X)
        for d in MONO_WHITE_NAMES:
            values += self.Xi[d]
        for D in BICOLOR_NAMES:
            values += self.Omega[D]
        return [m.generators()[0] for m in values]

    def generic_point(self) -> SuperPoint:
        return SuperPoint(
            self,
            list(self.X),
            {d: list(v) for d, v in self.Xi.items()},
            {D: list(v) for D, v in self.Omega.items()},
        )

    def point(
        self,
        X: Optional[Sequence] = None,
        Xi: Optional[Dict[str, Sequence]] = None,
        Omega: Optional[Dict[str, Sequence]] = None,
    ) -> SuperPoint:
        element = self.group.element(T=X, zeta=Xi, U=Omega)
        return SuperPoint(self, element.T, element.zeta, element.U)

    # --- Action ---

    def act(self, g: GroupElement, p: SuperPoint) -> SuperPoint:
        moved = self.group.compose(g, p.as_element())
        return SuperPoint(self, moved.T, moved.zeta, moved.U)

    def transform(self, g: GroupElement, phi: Superfield) -> Superfield:
        """phi evaluated at g(X, Xi, Omega)."""
        image = self.act(g, self.generic_point())
        mapping: Dict[Generator, Multivector] = {}
        for gen, value in zip(self.coordinates(), self._flatten(image)):
            mapping[gen] = value if isinstance(value, Multivector) else self.algebra.scalar(value)
        return phi.substitute(mapping)

    def _flatten(self, p: SuperPoint) -> List[Entry]:
        values = list(p.X)
        for d in MONO_WHITE_NAMES:
            values += p.Xi[d]
        for D in BICOLOR_NAMES:
            values += p.Omega[D]
        return values

    # --- Audits ---

    def dimension_audit(self) -> Report:
        report = Report(name="dimension[superspace]", config={"expected_total": 84})
        report.check(len(self.X) == 4, "degree 0 coordinates", len(self.X), 4)
        for d in MONO_WHITE_NAMES:
            report.check(len(self.Xi[d]) == 4, f"coordinates of degree {d}", len(self.Xi[d]), 4)
        for D in BICOLOR_NAMES:
            report.check(len(self.Omega[D]) == 4, f"coordinates of degree {D}", len(self.Omega[D]), 4)
        total = len(self.coordinates())
        report.check(total == 84, "total", total, 84)
        return report.complete()


# --- Reports ---


def supertranslation_shift(
    space: Superspace, zeta: Dict[str, List[Entry]], p: SuperPoint
) -> Tuple[List[Entry], Dict[str, List[Entry]]]:
    """tau and rho of [1|0|zeta|0] acting on p, from the pairing terms of the closed law."""
    group = space.group
    zero = group.zero
    tau_a, rho_a = group.pairing_terms(zeta, p.Xi, right_after=True)
    tau_b, rho_b = group.pairing_terms(p.Xi, zeta, right_after=False)
    tau = [a + b for a, b in zip(tau_a, tau_b)]
    rho = {
        D: [sharp(a + b) for a, b in zip(rho_a.get(D, [zero] * 4), rho_b.get(D, [zero] * 4))]
        for D in BICOLOR_NAMES
    }
    return tau, rho


def special_case_report(space: Superspace, seed: int = 0) -> Report:
    """The displayed special cases of the action on the generic point, every sector."""
    group = space.group
    rep = group.rep
    rng = np.random.default_rng(seed)
    p = space.generic_point()
    zero = group.zero
    report = Report(name="superspace.special_cases", seed=seed)

    # homogeneous Lorentz transformation
    plane = [(1, 2), (1, 3), (2, 3)][int(rng.integers(0, 3))]
    L = LorentzElement.quarter_turn(rep, *plane)
    moved = space.act(group.element(lorentz=L), p)
    expected = SuperPoint(
        space,
        L.vector_action(p.X, zero),
        {d: L.spin_action(p.Xi[d], zero) for d in MONO_WHITE_NAMES},
        {D: L.vector_action(p.Omega[D], zero) for D in BICOLOR_NAMES},
    )
    report.check(moved == expected, f"[Lambda{plane}|0|0|0]", moved.to_dict(), expected.to_dict())

    # translation
    T = [group.params.fresh("t", "0") for _ in range(4)]
    moved = space.act(group.element(T=T), p)
    expected = SuperPoint(space, [x + t for x, t in zip(p.X, T)], p.Xi, p.Omega)
    report.check(moved == expected, "[1|T|0|0]", moved.to_dict(), expected.to_dict())

    # supertranslations: Xi moves by zeta, X by tau and Omega by rho
    for d in MONO_WHITE_NAMES:
        values = [group.params.fresh("z", d) for _ in range(4)]
        zeta = {e: values if e == d else [zero] * 4 for e in MONO_WHITE_NAMES}
        moved = space.act(group.element(zeta={d: values}), p)
        tau, rho = supertranslation_shift(space, zeta, p)
        expected = SuperPoint(
            space,
            [x + t for x, t in zip(p.X, tau)],
            {e: [x + z for x, z in zip(p.Xi[e], zeta[e])] for e in MONO_WHITE_NAMES},
            {D: [x + r for x, r in zip(p.Omega[D], rho[D])] for D in BICOLOR_NAMES},
        )
        report.check(moved == expected, f"[1|0|zeta[{d}]|0]", moved.to_dict(), expected.to_dict())
        report.check(
            any(tau) or any(any(v) for v in rho.values()),
            f"[1|0|zeta[{d}]|0] shifts X or Omega",
        )

    # U-translations
    for D in BICOLOR_NAMES:
        U = [group.params.fresh("u", D) for _ in range(4)]
        moved = space.act(group.element(U={D: U}), p)
        omega_expected = {
            e: [x + u for x, u in zip(p.Omega[e], U)] if e == D else p.Omega[e] for e in BICOLOR_NAMES
        }
        expected = SuperPoint(space, p.X, p.Xi, omega_expected)
        report.check(moved == expected, f"[1|0|0|U[{D}]]", moved.to_dict(), expected.to_dict())
    return report.complete()


def action_report(space: Superspace, samples: int = 100, seed: int = 0) -> Report:
    """Compatibility with the product, identity action and inverse action on random points."""
    group = space.group
    elements = group.samples(3 * samples, seed, active=4)
    report = Report(name="superspace.action", seed=seed, config={"samples": samples})
    e = group.identity()
    for g, h, k in zip(elements[0::3], elements[1::3], elements[2::3]):
        p = space.point(k.T, k.zeta, k.U)
        left = space.act(g, space.act(h, p))
        right = space.act(group.compose(g, h), p)
        report.add_case()
        if left != right:
            report.add_failure("g(h(p)) = (gh)(p)", left.to_dict(), right.to_dict())
        report.check(space.act(e, p) == p, "e(p) = p")
        back = space.act(group.inverse(g), space.act(g, p))
        report.add_case()
        if back != p:
            report.add_failure("g^-1(g(p)) = p", back.to_dict(), p.to_dict())
    return report.complete()
