"""
Tests for the Z_n^3 grading and its commutation factor.

Tests cover: configuration validation, degree arithmetic and names,
the commutation factor on generator degrees, classification and the
axiom reports for n = 0 and n = 3.
"""

import pytest

from colorpoincare.core.errors import GradingError
from colorpoincare.core.grading import EPSILON_CACHE_SIZE, Classification, Degree, Grading, GradingConfig
from colorpoincare.evaluation.suites import classification_report, epsilon_axioms_report


def _make_grading(n: int = 0) -> Grading:
    return Grading(GradingConfig(n=n))


# --- Config Tests ---


class TestGradingConfig:
    @pytest.mark.parametrize("n", [1, 2])
    def test_degenerate_moduli_rejected(self, n):
        with pytest.raises(ValueError):
            GradingConfig(n=n)

    def test_field_order_defaults(self):
        assert GradingConfig(n=0).m == 8
        assert GradingConfig(n=3).m == 24
        assert GradingConfig(n=4).m == 8

    def test_field_order_must_contain_q(self):
        with pytest.raises(ValueError):
            GradingConfig(n=3, root_field_order=16)


# --- Degree Tests ---


class TestDegrees:
    def test_named_bicolor_degree(self):
        g = _make_grading()
        assert g.named("r+gb") == Degree(1, -1, 0)
        assert g.named("1b") == Degree(-1, -1, -1)

    def test_reduction_mod_n(self):
        g = _make_grading(3)
        assert g.named("r+gb") == Degree(1, 2, 0)
        assert g.add(g.named("r"), g.named("rb")) == g.zero
        assert g.neg(g.named("1")) == g.named("1b")

    def test_unknown_name(self):
        with pytest.raises(GradingError):
            _make_grading().named("violet")

    def test_name_of_round_trip(self):
        g = _make_grading()
        for name in ("1", "bb", "rb+g", "gb+bb"):
            assert g.name_of(g.named(name)) == name
        assert g.name_of(g.zero) == "0"

    def test_twenty_one_distinct_degrees_in_scope(self):
        degrees = _make_grading().in_scope_degrees()
        assert len(degrees) == 21
        assert len(set(degrees)) == 21


# --- Commutation Factor Tests ---


class TestEpsilon:
    def test_color_pair(self):
        g = _make_grading()
        q = g.field.q()
        assert g.epsilon(g.named("r"), g.named("g")) == q
        assert g.epsilon(g.named("g"), g.named("r")) == q.inverse()
        assert g.epsilon(g.named("g"), g.named("b")) == q
        assert g.epsilon(g.named("b"), g.named("r")) == q

    def test_same_color_anticommutes(self):
        g = _make_grading()
        assert g.epsilon(g.named("r"), g.named("r")) == -1
        assert g.epsilon(g.named("rb"), g.named("r")) == -1

    def test_white_sectors(self):
        g = _make_grading()
        assert g.epsilon(g.named("1"), g.named("1b")) == -1
        assert g.epsilon(g.named("r"), g.named("1")) == -1
        assert g.epsilon(g.named("1"), g.named("1")) == -1

    def test_zero_degree_commutes(self):
        g = _make_grading()
        for y in g.in_scope_degrees():
            assert g.epsilon(g.zero, y) == 1

    def test_antisymmetry_in_scope(self):
        g = _make_grading()
        one = g.field.one
        for x in g.in_scope_degrees():
            for y in g.in_scope_degrees():
                assert g.epsilon(x, y) * g.epsilon(y, x) == one

    def test_q_is_root_of_unity_for_n3(self):
        g = _make_grading(3)
        value = g.epsilon(g.named("r"), g.named("g"))
        assert value == g.field.q()
        assert value ** 3 == 1

    def test_cache_stays_bounded(self):
        g = _make_grading()
        degrees = [g.degree(r, k, 0) for r in range(8) for k in range(10)]
        for x in degrees:
            for y in degrees:
                g.epsilon(x, y)
        info = g._eps.cache_info()
        assert len(degrees) ** 2 > EPSILON_CACHE_SIZE
        assert info.maxsize == EPSILON_CACHE_SIZE
        assert info.currsize <= EPSILON_CACHE_SIZE
        assert g.epsilon(degrees[0], degrees[0]) == 1
        assert g.epsilon(g.named("r"), g.named("g")) == g.field.q()


# --- Classification Tests ---


class TestClassification:
    def test_examples(self):
        g = _make_grading()
        assert g.classify(g.zero) == Classification.BOSONIC
        assert g.classify(g.named("1")) == Classification.FERMIONIC
        assert g.classify(g.named("1b")) == Classification.FERMIONIC
        assert g.classify(g.named("r")) == Classification.EXOTIC
        assert g.classify(g.named("r+g")) == Classification.EXOTIC
        assert g.classify(g.degree(2, 2, 2)) == Classification.BOSONIC
        assert g.classify(g.degree(3, 3, 3)) == Classification.FERMIONIC

    def test_closed_form_only_for_z3(self):
        g = _make_grading(3)
        with pytest.raises(GradingError):
            g.classify_closed_form(g.zero)

    def test_classification_report_passes(self):
        report = classification_report(_make_grading())
        assert report.passed
        assert report.case_count > 125
        assert sum(report.config["product_degrees"].values()) > 0


# --- Axiom Report Tests ---


class TestEpsilonAxioms:
    @pytest.mark.parametrize("n", [0, 3, 4])
    def test_axioms_hold(self, n):
        report = epsilon_axioms_report(_make_grading(n), samples=50, seed=7)
        assert report.passed, report.to_text()
        assert report.seed == 7
