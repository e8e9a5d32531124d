"""
Verification suites run by the CLI.

Each suite takes a SuiteContext and returns a list of Reports. Objects that
several suites share (grading, Clifford data, bracket tables, the
representation, the supergroup) are built lazily once per context.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from colorpoincare.algebra.checks import grading_report, jacobi_report, same_sign_bicolor_triple
from colorpoincare.algebra.clifford import CliffordData, default_clifford
from colorpoincare.algebra.superalgebra import (
    CouplingConfig,
    StructureConstants,
    build,
    build_four_component,
)
from colorpoincare.cli.parser import parse_expr, render
from colorpoincare.core.grading import Classification, Degree, Grading, GradingConfig
from colorpoincare.core.grassmann import FAMILY_DEGREES, Generator, GrassmannAlgebra, Multivector, Word
from colorpoincare.core.scalars import Scalar
from colorpoincare.evaluation.reports import Report
from colorpoincare.representation.gamma import (
    Representation,
    faithfulness_report,
    homogeneity_report,
    homomorphism_report,
    make_representation,
)
from colorpoincare.representation.layout import degree_consistency_report
from colorpoincare.supergroup.element import (
    Supergroup,
    composition_report,
    exp_precondition_report,
    group_law_report,
    literal_law_report,
)
from colorpoincare.superspace.operators import OperatorRepresentation, operator_bracket_report
from colorpoincare.superspace.point import Superspace, action_report, special_case_report

logger = logging.getLogger(__name__)

GENERATOR_FAMILIES = list(FAMILY_DEGREES)


@dataclass
class SuiteContext:
    """Parameters of one verification run."""
    n: int = 0
    formulation: str = "four"
    kappa: str = "2"
    kappa_overrides: Dict[str, str] = field(default_factory=dict)
    seed: int = 0
    samples: int = 100
    exhaustive: bool = False
    threads: Optional[int] = None

    @cached_property
    def grading(self) -> Grading:
        return Grading(GradingConfig(n=self.n))

    @cached_property
    def algebra(self) -> GrassmannAlgebra:
        return GrassmannAlgebra(self.grading)

    @cached_property
    def cliff(self) -> CliffordData:
        return default_clifford(self.grading.field)

    @cached_property
    def cfg(self) -> CouplingConfig:
        return CouplingConfig.uniform(self.kappa).with_overrides(self.kappa_overrides)

    @cached_property
    def sc(self) -> StructureConstants:
        return build(self.formulation, self.cfg, self.cliff, self.grading)

    @cached_property
    def sc4(self) -> StructureConstants:
        if self.formulation == "four":
            return self.sc
        return build_four_component(self.cfg, self.cliff, self.grading)

    @cached_property
    def rep(self) -> Representation:
        return make_representation(self.grading, self.cliff, self.cfg)

    @cached_property
    def group(self) -> Supergroup:
        return Supergroup(self.rep)

    @cached_property
    def space(self) -> Superspace:
        return Superspace(self.group)

    def echo(self) -> Dict:
        return {
            "n": self.n,
            "formulation": self.formulation,
            "kappa": self.cfg.to_dict(),
            "samples": self.samples,
            "exhaustive": self.exhaustive,
        }


# --- Commutation factor ---


def _wrapped(g: Grading, x: Degree, y: Degree) -> bool:
    raw = (x.r + y.r, x.g + y.g, x.b + y.b)
    return g.n > 0 and g.add(x, y).as_tuple() != raw


def _bicharacter(report: Report, g: Grading, x: Degree, x2: Degree, y: Degree):
    """Both slots; for odd n a wrapped sum may flip the sign part only."""
    eps = g.epsilon
    loose = g.n % 2 == 1
    for context, lhs, rhs, wrapped in (
        (f"eps({x}+{x2}, {y})", eps(g.add(x, x2), y), eps(x, y) * eps(x2, y), _wrapped(g, x, x2)),
        (f"eps({y}, {x}+{x2})", eps(y, g.add(x, x2)), eps(y, x) * eps(y, x2), _wrapped(g, x, x2)),
    ):
        report.add_case()
        if lhs == rhs or (loose and wrapped and lhs == -rhs):
            continue
        report.add_failure(context, lhs, rhs)


def epsilon_axioms_report(grading: Grading, samples: int = 1000, seed: int = 0) -> Report:
    """Normalization, self-factor and bicharacter laws, exhaustive in scope plus random lattice points."""
    g = grading
    one = g.field.one
    report = Report(name=f"epsilon[n={g.n}]", seed=seed, config={"n": g.n, "samples": samples})
    degrees = g.in_scope_degrees()

    def axioms(x: Degree, y: Degree):
        report.check(g.epsilon(x, y) * g.epsilon(y, x) == one, f"eps({x},{y}) eps({y},{x}) = 1")
        report.check(g.epsilon(x, x) in (one, -one), f"eps({x},{x}) = +-1", g.epsilon(x, x))

    for x, y in product(degrees, repeat=2):
        axioms(x, y)
    for x, x2, y in product(degrees, repeat=3):
        _bicharacter(report, g, x, x2, y)

    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x, x2, y = (g.degree(*(int(v) for v in rng.integers(-3, 4, size=3))) for _ in range(3))
        axioms(x, y)
        _bicharacter(report, g, x, x2, y)
    report.complete()
    if not report.passed:
        logger.warning(f"{report.name}: {report.failure_count} failures")
    return report


def classification_report(grading: Grading) -> Report:
    """classify against the closed form on a cube of degrees and on products of up to three generators."""
    g = grading
    report = Report(name=f"classification[n={g.n}]", config={"n": g.n})
    report.check(g.classify(g.zero) == Classification.BOSONIC, "classify(0)", g.classify(g.zero), "Bosonic")
    for name in ("1", "1b"):
        c = g.classify(g.named(name))
        report.check(c == Classification.FERMIONIC, f"classify({name})", c, "Fermionic")
    if g.n:
        return report.complete()

    for r, gg, b in product(range(-2, 3), repeat=3):
        x = g.degree(r, gg, b)
        report.check(g.classify(x) == g.classify_closed_form(x), f"classify{x}", g.classify(x), g.classify_closed_form(x))

    gens = g.generator_degrees()
    counts = {c.value: 0 for c in Classification}
    seen = set()
    for length in range(1, 4):
        for word in combinations_with_replacement(gens, length):
            x = g.sum(word)
            if x in seen:
                continue
            seen.add(x)
            c = g.classify(x)
            counts[c.value] += 1
            report.check(c == g.classify_closed_form(x), f"classify{x}", c, g.classify_closed_form(x))
    report.config["product_degrees"] = counts
    return report.complete()


# --- Grassmann algebra ---

DISPLAYED_RULES: List[Tuple[str, str]] = [
    ("eta[1]*eta[2] + eta[2]*eta[1]", "0"),
    ("eta[1]*etab[1] + etab[1]*eta[1]", "0"),
    ("th_r[1]*th_g[1] - q*th_g[1]*th_r[1]", "0"),
    ("th_g[1]*th_b[1] - q*th_b[1]*th_g[1]", "0"),
    ("th_b[1]*th_r[1] - q*th_r[1]*th_b[1]", "0"),
    ("th_g[1]*th_r[1] - q^-1*th_r[1]*th_g[1]", "0"),
    ("thb_r[1]*thb_g[1] - q*thb_g[1]*thb_r[1]", "0"),
    ("th_r[1]*th_r[2] + th_r[2]*th_r[1]", "0"),
    ("th_r[1]*eta[1] + eta[1]*th_r[1]", "0"),
    ("thb_b[2]*etab[1] + etab[1]*thb_b[2]", "0"),
    ("th_r[1]*th_g[1]*th_b[1]*eta[1] + eta[1]*th_r[1]*th_g[1]*th_b[1]", "0"),
    ("(1/2)*(1-q) + (1/2)*q", "1/2"),
] + [(f"{symbol}[1]^2", "0") for symbol in ("th_r", "th_g", "th_b", "thb_r", "thb_g", "thb_b", "eta", "etab")]

ROUND_TRIP_CORPUS = [
    "th_r[1]*th_g[1]",
    "th_g[1]*th_r[1]",
    "-1/2*z8^3*q^-1*eta[1] + 2",
    "(1 + q)*th_b[2]*thb_b[1] - i*etab[3]",
    "(th_r[1] + th_g[2])^2",
    "z8*eta[1]*etab[1] - 3*q^2",
]


def displayed_rules_report(algebra: GrassmannAlgebra) -> Report:
    """The displayed commutation rules as parse-and-normalize identities, plus text round trips."""
    report = Report(name="grassmann.rules", config={"rules": len(DISPLAYED_RULES)})
    for text, expected in DISPLAYED_RULES:
        value = parse_expr(text, algebra)
        report.check(value == parse_expr(expected, algebra), text, value, expected)

    th_r, th_g = algebra.generator("theta_r", 1), algebra.generator("theta_g", 1)
    word = algebra.gen(th_r) * algebra.gen(th_g)
    q = algebra.field.q()
    report.check(word.adjoint() == word * (-q), "(th_r[1]*th_g[1])^#", word.adjoint(), word * (-q))
    report.check(
        word.derivative(th_g) == algebra.gen(th_r) * q,
        "d/dth_g[1] (th_r[1]*th_g[1])",
        word.derivative(th_g),
        algebra.gen(th_r) * q,
    )

    for text in ROUND_TRIP_CORPUS:
        value = parse_expr(text, algebra)
        again = parse_expr(render(value), algebra)
        report.check(again == value, f"round trip of {text!r}", render(again), render(value))
    return report.complete()


class _Sampler:
    """Random generators, scalars and multivectors for the law checks."""

    def __init__(self, algebra: GrassmannAlgebra, seed: int):
        self.algebra = algebra
        self.rng = np.random.default_rng(seed)
        self.pool = [algebra.generator(f, k) for f in GENERATOR_FAMILIES for k in (1, 2)]

    def generator(self) -> Generator:
        return self.pool[int(self.rng.integers(0, len(self.pool)))]

    def word(self, max_length: int) -> Word:
        length = int(self.rng.integers(0, max_length + 1))
        return tuple(self.generator() for _ in range(length))

    def scalar(self) -> Scalar:
        f = self.algebra.field
        c = int(self.rng.choice([-3, -2, -1, 1, 2, 3]))
        return f.rational(c) * f.q(int(self.rng.integers(-1, 2))) * f.z8() ** int(self.rng.integers(0, 8))

    def monomial(self, max_length: int = 4) -> Multivector:
        value = self.algebra.scalar(self.scalar())
        for gen in self.word(max_length):
            value = value * self.algebra.gen(gen)
        return value

    def multivector(self, max_length: int = 4) -> Multivector:
        value = self.algebra.zero
        for _ in range(int(self.rng.integers(1, 4))):
            value = value + self.monomial(max_length)
        return value


def insertion_order(algebra: GrassmannAlgebra, word: Word) -> Tuple[Optional[Scalar], Word]:
    """Normal order by right-to-left insertion, independent of normal_order."""
    eps = algebra.grading.epsilon
    items: List[Generator] = []
    factor = algebra.field.one
    for v in word:
        k = len(items)
        while k and v.key < items[k - 1].key:
            factor = factor * eps(items[k - 1].degree, v.degree)
            k -= 1
        items.insert(k, v)
    for a, b in zip(items, items[1:]):
        if a == b and algebra.self_factor(a) != algebra.field.one:
            return None, ()
    return factor, tuple(items)


def word_degree(value: Multivector) -> Degree:
    """Unreduced sum of the generator degrees of a one-term multivector."""
    (word,) = value.terms
    return Degree(sum(x.degree.r for x in word), sum(x.degree.g for x in word), sum(x.degree.b for x in word))


def grassmann_laws_report(algebra: GrassmannAlgebra, samples: int = 1000, seed: int = 0) -> Report:
    """Associativity, eps-commutativity, confluence, derivative laws and the adjoint on random samples."""
    s = _Sampler(algebra, seed)
    eps = algebra.grading.epsilon
    report = Report(name="grassmann.laws", seed=seed, config={"samples": samples})
    for _ in range(samples):
        a, b, c = s.multivector(), s.multivector(), s.multivector()
        lhs, rhs = (a * b) * c, a * (b * c)
        report.check(lhs == rhs, "associativity", lhs, rhs)

        x, y = s.monomial(), s.monomial()
        if x and y:
            factor = eps(word_degree(x), word_degree(y))
            report.check(x * y == (y * x) * factor, "eps-commutativity", x * y, y * x)

        word = s.word(6)
        report.check(algebra.normal_order(word) == insertion_order(algebra, word), "normal form confluence", word)

        f = s.multivector()
        i, j = s.generator(), s.generator()
        lhs = f.derivative(j).derivative(i)
        rhs = f.derivative(i).derivative(j) * eps(i.degree, j.degree)
        report.check(lhs == rhs, f"derivative exchange ({i}, {j})", lhs, rhs)

        if x:
            lhs = (x * f).derivative(i)
            rhs = x.derivative(i) * f + (x * f.derivative(i)) * eps(word_degree(x), i.degree)
            report.check(lhs == rhs, f"Leibniz rule for {i}", lhs, rhs)

        report.check(a.adjoint().adjoint() == a, "adjoint involution", a.adjoint().adjoint(), a)
        report.check((a * b).adjoint() == b.adjoint() * a.adjoint(), "(ab)^# = b^# a^#")
        k = s.scalar()
        report.check((a * k).adjoint() == a.adjoint() * k.conjugate(), "antilinearity")
    return report.complete()


# --- Suites ---


def epsilon_suite(ctx: SuiteContext) -> List[Report]:
    return [epsilon_axioms_report(ctx.grading, ctx.samples * 10, ctx.seed), classification_report(ctx.grading)]


def grassmann_suite(ctx: SuiteContext) -> List[Report]:
    return [displayed_rules_report(ctx.algebra), grassmann_laws_report(ctx.algebra, ctx.samples * 10, ctx.seed)]


def algebra_suite(ctx: SuiteContext) -> List[Report]:
    return [
        grading_report(ctx.sc),
        jacobi_report(ctx.sc, exhaustive=ctx.exhaustive, threads=ctx.threads, excluded=same_sign_bicolor_triple),
    ]


def representation_suite(ctx: SuiteContext) -> List[Report]:
    return [
        degree_consistency_report(ctx.rep.layout),
        homogeneity_report(ctx.sc4, ctx.rep),
        *(faithfulness_report(ctx.rep, block) for block in range(4)),
        homomorphism_report(ctx.sc4, ctx.rep, threads=ctx.threads),
    ]


def supergroup_suite(ctx: SuiteContext) -> List[Report]:
    group = ctx.group
    return [
        group.dimension_audit(),
        exp_precondition_report(group),
        composition_report(group, ctx.samples, ctx.seed, ctx.threads),
        group_law_report(group, ctx.samples, ctx.seed, ctx.threads),
        literal_law_report(group, min(ctx.samples, 20), ctx.seed),
    ]


def superspace_suite(ctx: SuiteContext) -> List[Report]:
    space = ctx.space
    ops = OperatorRepresentation(space, ctx.sc4)
    return [
        space.dimension_audit(),
        special_case_report(space, ctx.seed),
        action_report(space, ctx.samples, ctx.seed),
        operator_bracket_report(ctx.sc4, ops, threads=ctx.threads),
    ]


SUITES: Dict[str, Callable[[SuiteContext], List[Report]]] = {
    "epsilon": epsilon_suite,
    "grassmann": grassmann_suite,
    "algebra": algebra_suite,
    "representation": representation_suite,
    "supergroup": supergroup_suite,
    "superspace": superspace_suite,
}


def run_suite(name: str, ctx: SuiteContext) -> List[Report]:
    """Run one suite; an exception becomes a failed report carrying the error."""
    logger.info(f"Running suite {name}")
    try:
        reports = SUITES[name](ctx)
    except Exception as e:
        logger.error(f"Suite {name} raised: {e}")
        report = Report(name=name, config=ctx.echo(), seed=ctx.seed)
        report.error = f"{type(e).__name__}: {e}"
        return [report.complete()]
    for report in reports:
        report.config.setdefault("n", ctx.n)
        if report.seed is None:
            report.seed = ctx.seed
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.warning(f"Suite {name}: failing reports {failed}")
    return reports
