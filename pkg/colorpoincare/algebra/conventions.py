"""
Search over metric, gamma, charge conjugation, phase and spinor conventions.

A candidate survives when its Clifford data is consistent (Clifford
relation, invertible C, symmetric gamma^mu C), the table built from it passes
the grading and Jacobi checks, and for four components the 100x100
representation reproduces its supertranslation brackets.

Candidates share a base (family, spatial order, metric, C, sigma_4); a base
with inconsistent Clifford data is rejected with all of its variants.
"""

import logging
from itertools import product
from typing import Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from colorpoincare.algebra.checks import grading_report, jacobi_report, same_sign_bicolor_triple, sector_elements
from colorpoincare.algebra.clifford import (
    CHARGE_CONJUGATIONS,
    GAMMA_FAMILIES,
    METRICS,
    PHASE_NAMES,
    SPIN_BLOCKS,
    SPINOR_ORDERS,
    CliffordData,
    PhaseChoices,
    SpinorPairing,
    make_clifford,
    spatial_orders,
)
from colorpoincare.algebra.superalgebra import (
    FORMULATIONS,
    CouplingConfig,
    StructureConstants,
    build_four_component,
    build_two_component,
)
from colorpoincare.core.grading import Grading
from colorpoincare.core.scalars import ScalarField
from colorpoincare.evaluation.reports import Report
from colorpoincare.representation.gamma import homomorphism_report, make_representation

logger = logging.getLogger(__name__)

PhaseTuple = Tuple[str, str, str, int]
PairingTuple = Tuple[str, bool]
Base = Tuple[str, Tuple[int, int, int], str, str, str]
Variant = Tuple[PhaseTuple, str, PairingTuple]

DEFAULT_PHASES: Tuple[PhaseTuple, ...] = (("1", "1", "-1", 2),)
ALL_PHASES: List[PhaseTuple] = [(t, w, b, 2) for t, w, b in product(PHASE_NAMES, repeat=3)]
ALL_SPINOR_PAIRINGS: List[PairingTuple] = [(order, raised) for order in SPINOR_ORDERS for raised in (True, False)]
# M against Q exercises the spin block; the Q sectors reach every supertranslation family
REPRESENTATION_SECTORS = ["0", "1", "r", "g", "rb"]


class ConventionSpace(BaseModel):
    """Finite candidate space scanned by convention_search."""

    model_config = ConfigDict(frozen=True)

    formulation: str = Field("four", description="Table the candidates are scored on")
    families: List[str] = Field(default_factory=lambda: list(GAMMA_FAMILIES), description="Gamma families")
    metrics: List[str] = Field(default_factory=lambda: list(METRICS), description="Metric signature names")
    charges: List[str] = Field(
        default_factory=lambda: list(CHARGE_CONJUGATIONS), description="Charge conjugation candidates"
    )
    sigma4: List[str] = Field(default_factory=lambda: ["1", "i", "-i"], description="sigma_4 phases")
    permutations: bool = Field(True, description="Also permute the spatial gammas")
    phases: List[PhaseTuple] = Field(
        default_factory=lambda: list(ALL_PHASES),
        description="(translation, white, bicolor, norm) bracket normalisations, four components",
    )
    spin_blocks: List[str] = Field(default_factory=lambda: list(SPIN_BLOCKS), description="Spin block forms")
    spinor_pairings: List[PairingTuple] = Field(
        default_factory=lambda: list(ALL_SPINOR_PAIRINGS),
        description="(order, raise_bicolor) sigma index placements, two components",
    )
    jacobi_sectors: Optional[List[str]] = Field(
        None, description="Restrict the Jacobi check to these sectors; None checks every triple"
    )

    @field_validator("formulation")
    @classmethod
    def _known_formulation(cls, v: str) -> str:
        if v not in FORMULATIONS:
            raise ValueError(f"formulation must be one of {FORMULATIONS}, got {v!r}")
        return v


# --- Enumeration ---


def _bases(space: ConventionSpace) -> List[Base]:
    return list(
        product(
            space.families,
            spatial_orders(space.permutations),
            space.metrics,
            space.charges,
            space.sigma4,
        )
    )


def _variants(space: ConventionSpace) -> List[Variant]:
    """Phases and spin blocks shape the four-component table; spinor pairings the two-component one."""
    if space.formulation == "two":
        return [(DEFAULT_PHASES[0], SPIN_BLOCKS[0], pairing) for pairing in space.spinor_pairings]
    default_pairing = (SpinorPairing().order, SpinorPairing().raise_bicolor)
    return [(phases, spin, default_pairing) for phases in space.phases for spin in space.spin_blocks]


def _make(f: ScalarField, base: Base, variant: Variant) -> CliffordData:
    family, order, metric, charge, s4 = base
    phases, spin, pairing = variant
    return make_clifford(
        f,
        family,
        charge,
        sigma4=s4,
        order=order,
        phase_choices=PhaseChoices(*phases),
        spin_block=spin,
        metric=METRICS[metric],
        spinor_pairing=SpinorPairing(*pairing),
    )


def candidate_count(space: ConventionSpace) -> int:
    return len(_bases(space)) * len(_variants(space))


def candidates(space: ConventionSpace, grading: Grading) -> Iterator[CliffordData]:
    """Every convention in the space, in deterministic order."""
    variants = _variants(space)
    for base in _bases(space):
        for variant in variants:
            yield _make(grading.field, base, variant)


# --- Scoring ---


def _flat(matrices: Sequence[np.ndarray]) -> Tuple[str, ...]:
    return tuple(str(x) for m in matrices for x in m.flat)


def _table_key(cliff: CliffordData, formulation: str) -> Hashable:
    """What the table's structure depends on, bracket phases aside."""
    if formulation == "two":
        return ("two", _flat(cliff.pauli), cliff.metric, cliff.spinor_pairing)
    return ("four", _flat(cliff.gamma), _flat([cliff.C]), cliff.metric)


def _memo(cache: Optional[Dict], key: Hashable, compute: Callable[[], Report]) -> Report:
    if cache is None:
        return compute()
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def supertranslation_representation_report(
    sc: StructureConstants,
    cliff: CliffordData,
    grading: Grading,
    cfg: Optional[CouplingConfig] = None,
    threads: Optional[int] = None,
) -> Report:
    """Homomorphism check on the Lorentz, translation and supertranslation elements of REPRESENTATION_SECTORS."""
    rep = make_representation(grading, cliff, cfg or CouplingConfig())
    report = homomorphism_report(sc, rep, sector_elements(sc, REPRESENTATION_SECTORS), threads)
    report.name = "representation[supertranslations]"
    return report


def evaluate_candidate(
    cliff: CliffordData,
    grading: Grading,
    cfg: Optional[CouplingConfig] = None,
    sectors: Optional[List[str]] = None,
    formulation: str = "four",
    cache: Optional[Dict] = None,
) -> Report:
    """
    Merged report for one convention.

    Grading and Jacobi do not depend on the bracket phases, so with a cache
    they run once per table structure. Two-component Jacobi failures of the
    same-sign bicolor class are tallied apart and do not reject a candidate.
    """
    report = Report(name=f"convention[{cliff.name}]", config=cliff.to_dict())
    problems = cliff.problems()
    if problems:
        for problem in problems:
            report.add_failure(problem)
        report.add_case()
        return report.complete()
    cfg = cfg or CouplingConfig()
    built: List[StructureConstants] = []

    def table() -> StructureConstants:
        if not built:
            if formulation == "two":
                built.append(build_two_component(cfg, cliff, grading))
            else:
                built.append(build_four_component(cfg, cliff, grading))
        return built[0]

    def structure() -> Report:
        sc = table()
        elements = sector_elements(sc, sectors) if sectors else None
        return grading_report(sc).merge(jacobi_report(sc, elements, excluded=same_sign_bicolor_triple))

    key = (_table_key(cliff, formulation), tuple(sectors or ()))
    report = report.merge(_memo(cache, ("structure",) + key, structure))
    if formulation == "four" and report.passed:
        report = report.merge(
            _memo(
                cache,
                ("representation", _table_key(cliff, "four"), cliff.phase_choices, cliff.spin_block),
                lambda: supertranslation_representation_report(table(), cliff, grading, cfg),
            )
        )
    return report.complete()


def convention_search(
    space: Optional[ConventionSpace] = None,
    grading: Optional[Grading] = None,
    cfg: Optional[CouplingConfig] = None,
) -> List[CliffordData]:
    """All conventions of the space whose checks pass with zero failures."""
    space = space or ConventionSpace()
    grading = grading or Grading()
    f = grading.field
    variants = _variants(space)
    cache: Dict = {}
    passing: List[CliffordData] = []
    if not variants:
        logger.warning("Convention space has no phase, spin block or pairing variants")
        return passing
    logger.info(f"Convention search over {candidate_count(space)} {space.formulation}-component candidates")
    for base in _bases(space):
        head = _make(f, base, variants[0])
        problems = head.problems()
        if problems:
            logger.info(f"Rejected {head.name} with {len(variants)} variants: {problems[0]}")
            continue
        for variant in variants:
            cliff = _make(f, base, variant)
            report = evaluate_candidate(cliff, grading, cfg, space.jacobi_sectors, space.formulation, cache)
            if report.passed:
                passing.append(cliff)
            else:
                logger.info(f"Rejected {cliff.name}: {report.failure_count} failures")
    if not passing:
        logger.warning("Convention search found no consistent convention")
    return passing
