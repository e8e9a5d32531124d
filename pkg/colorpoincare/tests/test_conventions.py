"""
Tests for Clifford data and the convention search.

Tests cover: validity of the frozen convention, rejection of inconsistent
candidates, the size of the candidate space, the bracket phase check against
the representation and narrowed four- and two-component searches.
"""

import pytest
from pydantic import ValidationError

from colorpoincare.algebra.clifford import (
    CHARGE_CONJUGATIONS,
    GAMMA_FAMILIES,
    METRICS,
    PhaseChoices,
    SpinorPairing,
    default_clifford,
    make_clifford,
)
from colorpoincare.algebra.conventions import (
    ALL_PHASES,
    ConventionSpace,
    candidate_count,
    candidates,
    convention_search,
    evaluate_candidate,
)
from colorpoincare.algebra.superalgebra import CouplingConfig
from colorpoincare.core.errors import GradingError
from colorpoincare.core.grading import Grading

FROZEN_PHASES = ("1", "1", "-1", 2)


@pytest.fixture(scope="module")
def grading():
    return Grading()


def frozen_base(**overrides) -> ConventionSpace:
    """The frozen convention's base with every option single-valued."""
    options = dict(
        families=["chiral"],
        metrics=["mostly_minus"],
        charges=["g2g4"],
        sigma4=["1"],
        permutations=False,
        phases=[FROZEN_PHASES],
        spin_blocks=["transpose"],
        jacobi_sectors=["0"],
    )
    options.update(overrides)
    return ConventionSpace(**options)


# --- Clifford Data Tests ---


class TestCliffordData:
    def test_frozen_convention_is_valid(self, grading):
        cliff = default_clifford(grading.field)
        assert cliff.problems() == []
        assert cliff.metric == (-1, -1, -1, 1)

    def test_wrong_metric_breaks_clifford_relation(self, grading):
        cliff = make_clifford(grading.field, "chiral", "g2g4", metric=(1, 1, 1, 1))
        assert "Clifford relation fails for (1,1)" in cliff.problems()

    def test_asymmetric_charge_conjugation(self, grading):
        cliff = make_clifford(grading.field, "chiral", "g4")
        assert "gamma^2 C is not symmetric" in cliff.problems()

    def test_unknown_spin_block(self, grading):
        with pytest.raises(GradingError):
            make_clifford(grading.field, spin_block="diagonal")

    def test_unknown_spinor_pairing(self):
        with pytest.raises(GradingError):
            SpinorPairing(order="dotted_first")

    def test_non_default_pairing_is_named(self, grading):
        cliff = make_clifford(grading.field, spinor_pairing=SpinorPairing.literal())
        assert cliff.name.endswith(":as_written")
        assert cliff.to_dict()["spinor_pairing"] == {"order": "as_written", "raise_bicolor": False}


# --- Convention Space Tests ---


class TestConventionSpace:
    def test_default_space_scans_every_option(self):
        space = ConventionSpace()
        assert space.sigma4 == ["1", "i", "-i"]
        assert space.permutations
        assert FROZEN_PHASES in space.phases
        assert len(space.phases) == len(ALL_PHASES) == 64
        assert space.spin_blocks == ["transpose", "negative"]
        assert space.jacobi_sectors is None

    def test_candidate_count(self):
        bases = len(GAMMA_FAMILIES) * 6 * len(METRICS) * len(CHARGE_CONJUGATIONS) * 3
        assert candidate_count(ConventionSpace()) == bases * 64 * 2

    def test_two_component_count_uses_pairings(self):
        bases = len(GAMMA_FAMILIES) * 6 * len(METRICS) * len(CHARGE_CONJUGATIONS) * 3
        assert candidate_count(ConventionSpace(formulation="two")) == bases * 4

    def test_permutations_multiply_candidates(self, grading):
        space = frozen_base(permutations=True)
        pool = list(candidates(space, grading))
        assert len(pool) == candidate_count(space) == 6
        assert pool[0].name == "chiral:g2g4:s4=1"

    def test_unknown_formulation_rejected(self):
        with pytest.raises(ValidationError):
            ConventionSpace(formulation="three")


# --- Candidate Evaluation Tests ---


class TestEvaluateCandidate:
    def test_inconsistent_candidate_fails(self, grading):
        report = evaluate_candidate(make_clifford(grading.field, "chiral", "g4"), grading)
        assert not report.passed
        assert report.case_count == 1

    def test_frozen_candidate_passes(self, grading):
        report = evaluate_candidate(default_clifford(grading.field), grading, CouplingConfig.uniform(2), ["0"])
        assert report.passed, report.to_text()

    def test_flipped_bicolor_phase_rejected_by_representation(self, grading):
        cliff = make_clifford(grading.field, phase_choices=PhaseChoices("1", "1", "1", 2))
        report = evaluate_candidate(cliff, grading, CouplingConfig.uniform(2), ["0"])
        assert not report.passed
        contexts = [failure.context for failure in report.failures]
        assert any("Q[r]" in c and "Q[g]" in c for c in contexts)

    def test_cache_shares_structure_between_phases(self, grading):
        cache = {}
        f = grading.field
        evaluate_candidate(default_clifford(f), grading, None, ["0"], cache=cache)
        flipped = make_clifford(f, phase_choices=PhaseChoices("1", "1", "1", 2))
        evaluate_candidate(flipped, grading, None, ["0"], cache=cache)
        assert sum(1 for key in cache if key[0] == "structure") == 1
        assert sum(1 for key in cache if key[0] == "representation") == 2


# --- Convention Search Tests ---


class TestConventionSearch:
    def test_narrow_search(self, grading):
        passing = convention_search(frozen_base(charges=["g2g4", "g4"]), grading)
        assert [c.name for c in passing] == ["chiral:g2g4:s4=1"]

    def test_phase_search_keeps_frozen_phases(self, grading):
        flips = [FROZEN_PHASES, ("1", "1", "1", 2), ("-1", "1", "-1", 2)]
        passing = convention_search(frozen_base(phases=flips), grading)
        assert [c.phase_choices for c in passing] == [PhaseChoices(*FROZEN_PHASES)]

    def test_two_component_search_selects_pairing(self, grading):
        space = frozen_base(formulation="two", jacobi_sectors=["0", "1", "1b", "r", "rb"])
        passing = convention_search(space, grading)
        assert [c.spinor_pairing for c in passing] == [SpinorPairing()]
