"""
Jacobi and grading verification of a bracket table.
"""

import logging
from itertools import combinations_with_replacement, product
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from colorpoincare.algebra.superalgebra import (
    BICOLOR_Q_PAIRS,
    BasisElement,
    Combination,
    StructureConstants,
    bracket_positions,
)
from colorpoincare.evaluation.reports import Report
from colorpoincare.evaluation.runner import parallel_reports

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]

SAME_SIGN_PAIRS = {frozenset(pair) for pair in BICOLOR_Q_PAIRS}


def _scaled(combo: Combination, c) -> Combination:
    return {k: c * v for k, v in combo.items()}


def _sum(*combos: Combination) -> Combination:
    acc: Combination = {}
    for combo in combos:
        for k, v in combo.items():
            acc[k] = acc[k] + v if k in acc else v
    return {k: v for k, v in acc.items() if v}


def jacobi_residual(sc: StructureConstants, a: int, b: int, c: int) -> Combination:
    """eps(c,a)[a,[b,c]] + eps(a,b)[b,[c,a]] + eps(b,c)[c,[a,b]]."""
    parts = []
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        inner = sc.get(y, z)
        if inner:
            parts.append(_scaled(bracket_positions(sc, {x: sc.field.one}, inner), sc.eps(z, x)))
    return _sum(*parts)


def jacobi_triples(
    sc: StructureConstants,
    elements: Optional[Sequence[Union[BasisElement, str, int]]] = None,
    exhaustive: bool = False,
) -> List[Triple]:
    positions = (
        list(range(len(sc.basis)))
        if elements is None
        else sorted({sc.position(e) for e in elements})
    )
    if exhaustive:
        return list(product(positions, repeat=3))
    return list(combinations_with_replacement(positions, 3))


def same_sign_bicolor_triple(sc: StructureConstants, triple: Triple) -> bool:
    """
    A rotation with two supertranslations of one same-sign bicolor pair in the
    two-component table: (r, g), (g, b), (b, r) and their bars. Two spinors of
    the same handedness carry no vector, so these identities cannot close.
    """
    if sc.formulation != "two":
        return False
    elements = [sc.basis[k] for k in triple]
    if sorted(e.kind for e in elements) != ["M", "Q", "Q"]:
        return False
    return frozenset(e.sector for e in elements if e.kind == "Q") in SAME_SIGN_PAIRS


def jacobi_report(
    sc: StructureConstants,
    elements: Optional[Sequence[Union[BasisElement, str, int]]] = None,
    exhaustive: bool = False,
    threads: Optional[int] = None,
    excluded: Optional[Callable[[StructureConstants, Triple], bool]] = None,
) -> Report:
    """
    Check the graded Jacobi identity.

    Triples whose three pairwise brackets all vanish have a zero residual
    and are counted without evaluation.

    Args:
        sc: Bracket table.
        elements: Restrict to triples drawn from these basis elements.
        exhaustive: Iterate ordered triples instead of multisets.
        threads: Worker cap.
        excluded: Triples whose nonzero residual is tallied in
            config["excluded"] instead of failing the report.
    """
    triples = jacobi_triples(sc, elements, exhaustive)
    table = sc.table
    skipped: List[str] = []

    def check(chunk: Sequence[Triple], report: Report):
        for a, b, c in chunk:
            report.add_case()
            if (b, c) not in table and (c, a) not in table and (a, b) not in table:
                continue
            residual = jacobi_residual(sc, a, b, c)
            if residual:
                names = ", ".join(sc.basis[k].name for k in (a, b, c))
                if excluded is not None and excluded(sc, (a, b, c)):
                    skipped.append(names)
                else:
                    report.add_failure(f"jacobi({names})", sc.render(residual), "0")

    config = {
        "formulation": sc.formulation,
        "n": sc.grading.n,
        "elements": len(sc.basis) if elements is None else len(elements),
        "exhaustive": exhaustive,
    }
    report = parallel_reports(f"jacobi[{sc.formulation}]", triples, check, threads, config)
    if excluded is not None:
        report.config["excluded"] = len(skipped)
    return report


def grading_report(sc: StructureConstants) -> Report:
    """Every table(a, b) entry must have degree d_a + d_b; also checks antisymmetry."""
    report = Report(
        name=f"grading[{sc.formulation}]",
        config={"formulation": sc.formulation, "n": sc.grading.n},
    )
    g = sc.grading
    for (a, b), combo in sorted(sc.table.items()):
        expected = g.add(sc.degrees[a], sc.degrees[b])
        pair = f"({sc.basis[a].name}, {sc.basis[b].name})"
        for k in sorted(combo):
            report.check(
                sc.degrees[k] == expected,
                f"degree of {sc.basis[k].name} in {pair}",
                g.name_of(sc.degrees[k]),
                g.name_of(expected),
            )
        mirrored = {k: -sc.eps(b, a) * c for k, c in combo.items()}
        report.check(
            sc.get(b, a) == mirrored,
            f"antisymmetry of {pair}",
            sc.render(sc.get(b, a)),
            sc.render(mirrored),
        )
    report.complete()
    if not report.passed:
        logger.warning(f"{report.name}: {report.failure_count} failures")
    return report


def sector_elements(sc: StructureConstants, sectors: Iterable[str]) -> List[BasisElement]:
    """Basis elements of the named sectors; "0" selects M and P."""
    wanted = set(sectors)
    return [e for e in sc.basis if e.sector in wanted]
