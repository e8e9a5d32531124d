"""
Tests for superspace and its differential operators.

Tests cover: coordinate counts, the displayed special cases of the action,
compatibility of the action with the group law, the closed form of the
supertranslation shift, operators of translations, rotations and
supertranslations, and operator brackets against the table on every pair.
"""

import pytest

from colorpoincare.algebra.clifford import default_clifford
from colorpoincare.algebra.superalgebra import BasisElement, CouplingConfig, build_four_component
from colorpoincare.core.errors import UnknownElementError
from colorpoincare.core.grading import BICOLOR_NAMES, MONO_WHITE_NAMES
from colorpoincare.superspace.operators import OperatorRepresentation, delta_zeta, operator_bracket_report
from colorpoincare.superspace.point import (
    SuperPoint,
    Superspace,
    action_report,
    special_case_report,
    supertranslation_shift,
)


@pytest.fixture(scope="module")
def space():
    return Superspace()


@pytest.fixture(scope="module")
def ops(space):
    return OperatorRepresentation(space)


@pytest.fixture(scope="module")
def sc4(space):
    grading = space.group.grading
    return build_four_component(CouplingConfig.uniform(2), default_clifford(grading.field), grading)


def _coordinate(values):
    return values.generators()[0]


# --- Superspace Tests ---


class TestSuperspace:
    def test_dimension(self, space):
        report = space.dimension_audit()
        assert report.passed
        assert len(space.coordinates()) == 84

    def test_coordinate_degrees(self, space):
        g = space.group.grading
        assert space.X[0].degree() == g.zero
        assert space.Xi["gb"][2].degree() == g.named("gb")
        assert space.Omega["b+rb"][3].degree() == g.named("b+rb")

    def test_identity_action(self, space):
        p = space.generic_point()
        assert space.act(space.group.identity(), p) == p

    def test_special_cases(self, space):
        report = special_case_report(space, seed=2)
        assert report.passed, report.to_text()
        assert report.case_count == 2 + 2 * len(MONO_WHITE_NAMES) + len(BICOLOR_NAMES)

    def test_supertranslation_without_pairing_terms_fails(self):
        broken = Superspace()
        act = broken.act

        def shift_xi_only(g, p):
            moved = act(g, p)
            if any(any(v) for v in g.zeta.values()):
                return SuperPoint(broken, list(p.X), moved.Xi, {D: list(v) for D, v in p.Omega.items()})
            return moved

        broken.act = shift_xi_only  # type: ignore[method-assign]
        report = special_case_report(broken, seed=2)
        assert not report.passed
        failed = {f.context for f in report.failures}
        assert failed == {f"[1|0|zeta[{d}]|0]" for d in MONO_WHITE_NAMES}

    def test_supertranslation_shift_is_bilinear(self, space):
        p = space.generic_point()
        zero = space.group.zero
        z = space.group.params.fresh("z", "r")
        zeta = {e: [z, zero, zero, zero] if e == "r" else [zero] * 4 for e in MONO_WHITE_NAMES}
        tau, rho = supertranslation_shift(space, zeta, p)
        twice, _ = supertranslation_shift(space, {e: [x * 2 for x in v] for e, v in zeta.items()}, p)
        assert any(tau) or any(any(v) for v in rho.values())
        assert all(t2 == t * 2 for t, t2 in zip(tau, twice))

    def test_action_respects_group_law(self, space):
        report = action_report(space, samples=2, seed=9)
        assert report.passed, report.to_text()

    def test_transform_by_translation(self, space):
        group = space.group
        t = group.params.fresh("t", "0")
        x1 = space.X[0]
        phi = x1 * x1
        moved = space.transform(group.element(T=[t, 0, 0, 0]), phi)
        assert moved == (x1 + t) * (x1 + t)


# --- Operator Tests ---


class TestOperators:
    def test_translation_operator(self, space, ops):
        op = ops.operator_of(BasisElement("P", (1,)))
        minus_i = -space.algebra.field.i()
        x1, x2 = space.X[0], space.X[1]
        assert op.on(_coordinate(x1)) == space.algebra.scalar(minus_i)
        assert op(x1 * x2) == x2 * minus_i
        assert op(x2) == space.algebra.zero

    def test_bicolor_operator_degree(self, space, ops):
        op = ops.operator_of(BasisElement("R", (2,), "g+b"))
        assert op.degree == space.group.grading.named("g+b")
        assert op(space.Omega["g+b"][1]) == space.algebra.scalar(-space.algebra.field.i())

    def test_translations_commute(self, ops):
        p1 = ops.operator_of(BasisElement("P", (1,)))
        p2 = ops.operator_of(BasisElement("P", (2,)))
        assert p1.bracket(p2).is_zero()

    def test_rotation_of_translation(self, ops):
        m12 = ops.operator_of(BasisElement("M", (1, 2)))
        p1 = ops.operator_of(BasisElement("P", (1,)))
        p2 = ops.operator_of(BasisElement("P", (2,)))
        # [M12, P1] = i P2 in the table; the operators carry the opposite sign
        i = ops.algebra.field.i()
        assert m12.bracket(p1) == -(p2.scale(i))

    def test_operators_are_cached(self, ops):
        e = BasisElement("M", (2, 3))
        assert ops.operator_of(e) is ops.operator_of(e)

    def test_unknown_kind(self, ops):
        with pytest.raises(UnknownElementError):
            ops.operator_of(BasisElement("X", (1,)))

    def test_bracket_report_on_even_elements(self, sc4, ops):
        elements = ["M12", "M13", "P1", "P2", "R[r+g]1", "R[r+g]2"]
        report = operator_bracket_report(sc4, ops, elements, threads=1)
        assert report.passed, report.to_text()
        assert report.config["sign"] == -1
        assert report.case_count == 36

    def test_supertranslation_operator(self, space, ops):
        op = ops.operator_of(BasisElement("Q", (3,), "g"))
        minus_i = -space.algebra.field.i()
        assert op.degree == space.group.grading.named("g")
        assert op(space.Xi["g"][2]) == space.algebra.scalar(minus_i)
        assert op(space.Xi["g"][1]) == space.algebra.zero

    def test_rotation_of_supertranslation(self, sc4, ops):
        m, q = sc4.position("M12"), sc4.position("Q[b]2")
        expected = ops.combination(sc4, sc4.get(m, q))
        assert expected is not None
        assert ops.operator_of(sc4.basis[m]).bracket(ops.operator_of(sc4.basis[q])) == -expected

    def test_colored_supertranslations_close_on_bicolor_translations(self, sc4, ops):
        nonzero = 0
        for a in range(1, 5):
            for b in range(1, 5):
                x, y = sc4.position(f"Q[r]{a}"), sc4.position(f"Q[g]{b}")
                left = ops.operator_of(sc4.basis[x]).bracket(ops.operator_of(sc4.basis[y]))
                combo = sc4.get(x, y)
                if combo:
                    nonzero += 1
                    assert left == -ops.combination(sc4, combo)
                else:
                    assert left.is_zero()
        assert nonzero > 0

    def test_bracket_report_on_all_pairs(self, sc4, ops):
        report = operator_bracket_report(sc4, ops)
        assert report.passed, report.to_text()
        assert report.config["sign"] == -1
        assert report.case_count == 90 * 90


# --- Supertranslation Variation Tests ---


class TestDeltaZeta:
    def test_empty_variation(self, space, ops):
        assert delta_zeta({}, space.X[0], ops) == space.algebra.zero

    def test_constant_field_is_invariant(self, space, ops):
        z = space.group.params.fresh("dz", "r")
        assert delta_zeta({"r": [z, 0, 0, 0]}, space.algebra.one, ops) == space.algebra.zero

    def test_additive_over_sectors(self, space, ops):
        params = space.group.params
        zr = [params.fresh("dz", "r"), 0, 0, 0]
        z1 = [0, params.fresh("dz", "1"), 0, 0]
        phi = space.X[0]
        combined = delta_zeta({"r": zr, "1": z1}, phi, ops)
        separate = delta_zeta({"r": zr}, phi, ops) + delta_zeta({"1": z1}, phi, ops)
        assert combined == separate
