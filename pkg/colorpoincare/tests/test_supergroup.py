"""
Tests for the supergroup.

Tests cover: Lorentz elements, element construction and degree checks,
the closed product law against the matrix product, associativity and
inverses, the printed law comparison and the exponential preconditions.
"""

import pytest

from colorpoincare.algebra.superalgebra import BasisElement
from colorpoincare.core.errors import DegreeMismatchError, NotNilpotentError, UnknownElementError
from colorpoincare.evaluation.reports import Verdict
from colorpoincare.supergroup.element import (
    Supergroup,
    composition_report,
    exp_nilpotent,
    exp_precondition_report,
    group_law_report,
    literal_law_report,
    rep_of_element,
)
from colorpoincare.supergroup.lorentz import LorentzElement


@pytest.fixture(scope="module")
def group():
    return Supergroup()


# --- Lorentz Tests ---


class TestLorentzElement:
    def test_quarter_turn_preserves_metric(self, group):
        L = LorentzElement.quarter_turn(group.rep, 1, 2)
        assert L.is_lorentz()

    def test_quarter_turn_inverse(self, group):
        rep = group.rep
        L = LorentzElement.quarter_turn(rep, 2, 3)
        assert L.compose(L.inverse()) == LorentzElement.identity(rep)

    def test_four_quarter_turns(self, group):
        rep = group.rep
        L = LorentzElement.quarter_turn(rep, 1, 3)
        full = L.compose(L).compose(L).compose(L)
        eye = LorentzElement.identity(rep)
        assert all(not (x - y) for x, y in zip(full.vector.flat, eye.vector.flat))
        assert all(not (x + y) for x, y in zip(full.spinor.flat, eye.spinor.flat))

    def test_boost_plane_rejected(self, group):
        with pytest.raises(UnknownElementError):
            LorentzElement.quarter_turn(group.rep, 1, 4)

    def test_omega_must_have_degree_zero(self, group):
        w = group.params.fresh("w", "r")
        with pytest.raises(DegreeMismatchError):
            LorentzElement.from_omega(group.rep, {(1, 2): w})


# --- Element Tests ---


class TestGroupElement:
    def test_identity(self, group):
        e = group.identity()
        assert e.is_identity()
        assert group.compose(e, e).is_identity()

    def test_identity_matrix(self, group):
        assert rep_of_element(group.identity()) == group.rep.identity()

    def test_matrix_of_product(self, group):
        t, u = group.params.fresh("t", "0"), group.params.fresh("u", "b+r")
        g = group.element(U={"b+r": [u, 0, 0, 0]})
        h = group.element(T=[0, 0, t, 0])
        assert rep_of_element(group.compose(g, h)) == rep_of_element(g) @ rep_of_element(h)

    def test_translations_add(self, group):
        t1, t2 = group.params.fresh("t", "0"), group.params.fresh("t", "0")
        g = group.element(T=[t1, 0, 0, 0])
        h = group.element(T=[0, t2, 0, 0])
        product = group.compose(g, h)
        assert product == group.element(T=[t1, t2, 0, 0])

    def test_bicolor_translations_add(self, group):
        u1, u2 = group.params.fresh("u", "r+g"), group.params.fresh("u", "r+g")
        g = group.element(U={"r+g": [u1, 0, 0, 0]})
        h = group.element(U={"r+g": [u2, 0, 0, 0]})
        assert group.compose(g, h) == group.element(U={"r+g": [u1 + u2, 0, 0, 0]})

    def test_wrong_degree_rejected(self, group):
        x = group.params.fresh("x", "r")
        with pytest.raises(DegreeMismatchError):
            group.element(T=[x, 0, 0, 0])

    def test_unknown_sector_rejected(self, group):
        with pytest.raises(DegreeMismatchError):
            group.element(zeta={"violet": [0, 0, 0, 0]})

    def test_component_count_checked(self, group):
        with pytest.raises(DegreeMismatchError):
            group.element(T=[0, 0, 0])

    def test_random_element_inverse(self, group):
        for g in group.samples(2, seed=5, active=4):
            assert group.compose(g, group.inverse(g)).is_identity()
            assert group.compose(group.inverse(g), g).is_identity()


# --- Report Tests ---


class TestSupergroupReports:
    def test_dimension_audit(self, group):
        report = group.dimension_audit()
        assert report.passed
        assert report.config["expected_total"] == 90

    def test_exp_preconditions(self, group):
        report = exp_precondition_report(group)
        assert report.passed, report.to_text()

    def test_rotation_generator_not_nilpotent(self, group):
        with pytest.raises(NotNilpotentError):
            exp_nilpotent(group.rep.gamma(BasisElement("M", (1, 2))))

    def test_closed_law_matches_matrix_product(self, group):
        report = composition_report(group, samples=2, seed=3, threads=1)
        assert report.passed, report.to_text()
        assert report.seed == 3

    def test_group_axioms(self, group):
        report = group_law_report(group, samples=2, seed=4, threads=1)
        assert report.passed, report.to_text()

    def test_printed_law_is_informational(self, group):
        report = literal_law_report(group, samples=2, seed=1)
        assert report.verdict == Verdict.SKIP
        assert {"product_agrees", "printed_inverse_exact"} <= set(report.config)
