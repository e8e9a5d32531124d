"""
Tests for the 100x100 block representation.

Tests cover: the block layout and its degree tables, sparse block
matrices, homogeneity and faithfulness of the generator matrices, and the
homomorphism check on the Poincare subalgebra and on every pair.
"""

import hashlib

import pytest

from colorpoincare.algebra.clifford import default_clifford, identity
from colorpoincare.algebra.superalgebra import BasisElement, CouplingConfig, build, build_four_component
from colorpoincare.core.errors import GradingError, LayoutError
from colorpoincare.core.grading import Grading, GradingConfig
from colorpoincare.evaluation import suites
from colorpoincare.evaluation.reports import Report
from colorpoincare.representation.gamma import (
    ElementCoordinates,
    element_matrix,
    faithfulness_report,
    gamma_of,
    homogeneity_report,
    homomorphism_report,
    identity_matrix,
    make_representation,
    poincare_elements,
)
from colorpoincare.representation import layout as layout_module
from colorpoincare.representation.layout import (
    TABLES_DIGEST,
    block_layout,
    canonical_rendering,
    degree_consistency_report,
    tables_digest,
)
from colorpoincare.representation.supermatrix import SuperMatrix


@pytest.fixture(scope="module")
def grading():
    return Grading()


@pytest.fixture(scope="module")
def rep(grading):
    return make_representation(grading, default_clifford(grading.field), CouplingConfig.uniform(2))


@pytest.fixture(scope="module")
def sc4(grading):
    return build_four_component(CouplingConfig.uniform(2), default_clifford(grading.field), grading)


# --- Layout Tests ---


class TestBlockLayout:
    def test_dimensions(self):
        layout = block_layout()
        assert layout.dimension == 100
        assert layout.block_count == 24
        assert layout.offset(4) == 20
        assert layout.block_of(99) == 23

    def test_table_cells(self):
        layout = block_layout()
        assert layout.degree_name(0, 1) == "r+g"
        assert layout.degree_name(0, 10) == "1"
        assert layout.degree_name(11, 0) == "1"
        assert layout.degree_name(7, 7) == "0"
        assert not layout.allowed(4, 5)

    def test_index_outside_layout(self):
        with pytest.raises(LayoutError):
            block_layout().block_of(-1)

    def test_degree_tables_are_consistent(self):
        report = degree_consistency_report(block_layout())
        assert report.passed, report.to_text()

    def test_tables_digest(self):
        rendering = canonical_rendering()
        assert len(rendering.splitlines()) == 100
        assert rendering.splitlines()[1] == "0,1:r+g"
        assert hashlib.sha256(rendering.encode("utf-8")).hexdigest() == TABLES_DIGEST
        assert tables_digest() == TABLES_DIGEST

    def test_edited_table_changes_digest(self, monkeypatch):
        monkeypatch.setitem(layout_module.TABLE_B[1], 4, "rb")
        assert tables_digest() != TABLES_DIGEST
        report = degree_consistency_report(block_layout())
        assert "tables digest" in [failure.context for failure in report.failures]

    def test_grid_lists_every_block_row(self):
        grid = block_layout().render_grid()
        assert len(grid.splitlines()) >= 24


# --- SuperMatrix Tests ---


class TestSuperMatrix:
    def test_forbidden_block_rejected(self, grading):
        m = SuperMatrix.zeros(block_layout(grading))
        with pytest.raises(LayoutError):
            m.set_block(4, 5, identity(grading.field, 4))

    def test_wrong_block_shape_rejected(self, grading):
        m = SuperMatrix.zeros(block_layout(grading))
        with pytest.raises(LayoutError):
            m.set_block(0, 0, identity(grading.field, 4))

    def test_identity_is_multiplicative_unit(self, rep):
        one = identity_matrix(rep.layout)
        p1 = rep.gamma(BasisElement("P", (1,)))
        assert one @ one == one
        assert one @ p1 == p1
        assert p1 @ one == p1

    def test_zero_matrix(self, grading):
        m = SuperMatrix.zeros(block_layout(grading))
        assert m.is_zero()
        assert m.nnz() == 0


# --- Generator Matrix Tests ---


class TestGeneratorMatrices:
    def test_translations_square_to_zero(self, rep):
        for mu in range(1, 5):
            m = rep.gamma(BasisElement("P", (mu,)))
            assert not m.is_zero()
            assert (m @ m).is_zero()

    def test_every_generator_is_homogeneous(self, sc4, rep):
        report = homogeneity_report(sc4, rep)
        assert report.passed, report.to_text()
        assert report.case_count == 90

    @pytest.mark.parametrize("block", [0, 1, 2, 3])
    def test_poincare_generators_are_independent(self, rep, block):
        report = faithfulness_report(rep, block)
        assert report.passed, report.to_text()
        assert report.config["block"] == block

    def test_homomorphism_on_poincare_subalgebra(self, sc4, rep):
        report = homomorphism_report(sc4, rep, elements=list(poincare_elements()), threads=2)
        assert report.passed, report.to_text()
        assert report.case_count == 100

    def test_homomorphism_on_every_pair(self, sc4, rep):
        report = homomorphism_report(sc4, rep)
        assert report.passed, report.to_text()
        assert report.case_count == 90 * 90

    def test_suite_checks_faithfulness_on_every_vector_block(self, monkeypatch):
        monkeypatch.setattr(suites, "homomorphism_report", lambda *args, **kwargs: Report(name="homomorphism").complete())
        reports = suites.representation_suite(suites.SuiteContext())
        blocks = [r.config["block"] for r in reports if r.name == "faithfulness"]
        assert blocks == [0, 1, 2, 3]
        assert all(r.passed for r in reports)

    def test_two_component_table_rejected(self, grading, rep):
        sc2 = build("two", CouplingConfig.uniform(2), default_clifford(grading.field), grading)
        with pytest.raises(GradingError):
            homomorphism_report(sc2, rep)

    def test_foreign_clifford_rejected(self):
        with pytest.raises(GradingError):
            make_representation(Grading(GradingConfig(n=3)), default_clifford(Grading().field))


# --- Functional API Tests ---


class TestFunctionalApi:
    def test_gamma_of_uses_default_convention(self, rep):
        e = BasisElement("R", (2,), "r+g")
        assert gamma_of(e) == rep.gamma(e)

    def test_empty_element_is_zero(self, rep):
        assert element_matrix(ElementCoordinates(), rep).is_zero()

    def test_translation_element(self, rep):
        one = rep.field.one
        m = element_matrix(ElementCoordinates(t={1: one}), rep)
        assert m == rep.gamma(BasisElement("P", (1,))).scale(rep.field.i())
