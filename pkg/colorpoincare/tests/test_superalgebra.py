"""
Tests for the graded Poincare superalgebra tables.

Tests cover: basis sizes of both formulations, Lorentz brackets, coupling
configuration, grading and antisymmetry of the tables, the graded Jacobi
identity on sector subsets and on every triple, and the spinor index
placement of the two-component table.
"""

import pytest

from colorpoincare.algebra.checks import (
    SAME_SIGN_PAIRS,
    grading_report,
    jacobi_report,
    same_sign_bicolor_triple,
    sector_elements,
)
from colorpoincare.algebra.clifford import SpinorPairing, default_clifford
from colorpoincare.algebra.superalgebra import (
    BasisElement,
    CouplingConfig,
    build,
    bracket,
    build_four_component,
    build_two_component,
)
from colorpoincare.core.errors import GradingError, UnknownElementError
from colorpoincare.core.grading import Grading


def _make_table(formulation: str = "four", kappa="2"):
    grading = Grading()
    cfg = CouplingConfig.uniform(kappa)
    return build(formulation, cfg, default_clifford(grading.field), grading)


# --- Basis Tests ---


class TestBasis:
    def test_four_component_size(self):
        assert len(_make_table("four").basis) == 90

    def test_two_component_size(self):
        assert len(_make_table("two").basis) == 74

    def test_names_and_positions(self):
        sc = _make_table()
        assert sc.basis[0].name == "M12"
        assert sc.element("P3") == BasisElement("P", (3,))
        assert sc.element("Q[r]2").degree == sc.grading.named("r")
        assert sc.element("R[r+g]4").degree == sc.grading.named("r+g")

    def test_unknown_name(self):
        with pytest.raises(UnknownElementError):
            _make_table().position("Q[x]1")

    def test_unknown_formulation(self):
        grading = Grading()
        with pytest.raises(GradingError):
            build("three", CouplingConfig(), default_clifford(grading.field), grading)


# --- Bracket Tests ---


class TestBrackets:
    def test_rotation_acts_on_translations(self):
        sc = _make_table()
        i = sc.field.i()
        assert bracket(sc, "M12", "P1") == {BasisElement("P", (2,)): i}
        assert bracket(sc, "M12", "P3") == {}

    def test_translations_commute(self):
        sc = _make_table()
        for mu in range(1, 5):
            for nu in range(1, 5):
                assert bracket(sc, f"P{mu}", f"P{nu}") == {}

    def test_supertranslations_close_on_translations(self):
        sc = _make_table()
        kinds = set()
        for a in range(1, 5):
            for b in range(1, 5):
                kinds |= {e.kind for e in bracket(sc, f"Q[1]{a}", f"Q[1b]{b}")}
        assert kinds == {"P"}

    def test_bicolor_pair_lands_in_bicolor_sector(self):
        sc = _make_table()
        sectors = set()
        for a in range(1, 5):
            for b in range(1, 5):
                sectors |= {e.sector for e in bracket(sc, f"Q[r]{a}", f"Q[g]{b}")}
        assert sectors == {"r+g"}

    def test_same_sector_supertranslations_vanish(self):
        sc = _make_table()
        assert bracket(sc, "Q[r]1", "Q[r]2") == {}


# --- Coupling Tests ---


class TestCouplingConfig:
    def test_override_applies_to_opposite_sector(self):
        f = Grading().field
        cfg = CouplingConfig.uniform(2).with_overrides({"rb": 3})
        assert cfg.kappa_of(f, "r") == 3
        assert cfg.kappa_of(f, "rb") == 3
        assert cfg.kappa_of(f, "g") == 2

    def test_unknown_override_sector(self):
        with pytest.raises(GradingError):
            CouplingConfig.uniform(2).with_overrides({"violet": 1})

    def test_sqrt_kappa_for_twice_a_square(self):
        f = Grading().field
        assert CouplingConfig.uniform(2).sqrt_kappa(f, "1") == f.sqrt2()


# --- Table Check Tests ---


class TestTableChecks:
    @pytest.mark.parametrize("formulation", ["two", "four"])
    def test_grading_and_antisymmetry(self, formulation):
        report = grading_report(_make_table(formulation))
        assert report.passed, report.to_text()
        assert report.case_count > 0

    def test_jacobi_on_poincare_subalgebra(self):
        sc = _make_table()
        report = jacobi_report(sc, sector_elements(sc, ["0"]), threads=1)
        assert report.passed, report.to_text()
        assert report.case_count == 220

    def test_jacobi_with_white_supertranslations(self):
        grading = Grading()
        sc = build_four_component(CouplingConfig.uniform(2), default_clifford(grading.field), grading)
        report = jacobi_report(sc, sector_elements(sc, ["0", "1", "1b"]), threads=2)
        assert report.passed, report.to_text()

    def test_two_component_builds_with_other_kappa(self):
        grading = Grading()
        sc = build_two_component(CouplingConfig.uniform(8), default_clifford(grading.field), grading)
        assert grading_report(sc).passed


# --- Full Jacobi Tests ---


@pytest.fixture(scope="module")
def four_table():
    return _make_table("four")


@pytest.fixture(scope="module")
def two_table():
    return _make_table("two")


@pytest.fixture(scope="module")
def two_jacobi(two_table):
    return jacobi_report(two_table)


def _jacobi_sectors(sc, context: str):
    names = context[len("jacobi(") : -1].split(", ")
    return [sc.basis[sc.position(name)] for name in names]


class TestFullJacobi:
    def test_four_component_every_triple(self, four_table):
        report = jacobi_report(four_table)
        assert report.passed, report.to_text()
        assert report.case_count == 125580

    def test_two_component_white_supertranslations(self, two_table):
        report = jacobi_report(two_table, sector_elements(two_table, ["0", "1", "1b"]), threads=2)
        assert report.passed, report.to_text()

    def test_two_component_failures_are_same_sign_rotations(self, two_table, two_jacobi):
        assert not two_jacobi.passed
        for failure in two_jacobi.failures:
            elements = _jacobi_sectors(two_table, failure.context)
            assert sorted(e.kind for e in elements) == ["M", "Q", "Q"], failure.context
            sectors = frozenset(e.sector for e in elements if e.kind == "Q")
            assert sectors in SAME_SIGN_PAIRS, failure.context

    def test_same_sign_exclusion_accounts_for_every_failure(self, two_table, two_jacobi):
        report = jacobi_report(two_table, excluded=same_sign_bicolor_triple)
        assert report.passed, report.to_text()
        assert report.config["excluded"] == two_jacobi.failure_count
        assert report.case_count == two_jacobi.case_count

    def test_printed_index_placement_breaks_mixed_triples(self):
        grading = Grading()
        sc = build_two_component(
            CouplingConfig.uniform(2),
            default_clifford(grading.field),
            grading,
            spinor_pairing=SpinorPairing.literal(),
        )
        report = jacobi_report(sc, excluded=same_sign_bicolor_triple)
        assert not report.passed
        assert "jacobi(M12, Q[r]1, Q[1b]2)" in [failure.context for failure in report.failures]

    def test_same_sign_predicate_ignores_four_components(self, four_table):
        triple = tuple(four_table.position(name) for name in ("M12", "Q[r]1", "Q[g]1"))
        assert not same_sign_bicolor_triple(four_table, triple)

    def test_same_sign_predicate_on_two_components(self, two_table):
        same = tuple(two_table.position(name) for name in ("M12", "Q[r]1", "Q[g]2"))
        mixed = tuple(two_table.position(name) for name in ("M12", "Q[r]1", "Q[gb]2"))
        assert same_sign_bicolor_triple(two_table, same)
        assert not same_sign_bicolor_triple(two_table, mixed)
