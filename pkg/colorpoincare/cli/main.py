"""
Command-line front end.

Usage:
    colorpoincare verify all --formulation four --report json
    colorpoincare verify epsilon --n 3
    colorpoincare table blocks
    colorpoincare eval "th_r[1]*th_g[1] - q*th_g[1]*th_r[1]"
    colorpoincare eval "th_r[1]*th_g[1]" --adjoint
    colorpoincare conventions search --emit conventions.json

Exit codes: 0 when every report passed, 1 on any failure, 2 on a usage error.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Literal, Optional, Sequence

from pydantic import BaseModel, Field, ValidationError, field_validator

from colorpoincare.algebra.conventions import ConventionSpace, convention_search
from colorpoincare.cli.parser import parse_expr, render
from colorpoincare.core.config import get_settings
from colorpoincare.core.grading import MONO_WHITE_NAMES
from colorpoincare.evaluation.reports import Report
from colorpoincare.evaluation.suites import SUITES, SuiteContext, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

TABLES = ("epsilon", "brackets", "blocks")
QUICK_JACOBI_SECTORS = ["0", "1", "r", "rb", "r+g"]


class RunConfig(BaseModel):
    """Validated options of one invocation."""

    command: Literal["verify", "table", "eval", "conventions"]
    target: str = Field("all", description="Suite, table, expression or conventions action")
    n: int = Field(0, ge=0, description="Grading modulus; 0 for Z^3")
    formulation: Literal["two", "four"] = Field("four", description="Spinor formulation")
    kappa: str = Field("2", description="Uniform kappa_d")
    kappa_overrides: Dict[str, str] = Field(default_factory=dict, description="Per-sector kappa values")
    seed: int = Field(0, description="Seed of the randomised checks")
    samples: int = Field(100, gt=0, description="Random samples per check")
    report: Literal["text", "json"] = Field("text", description="Report format")
    out: Optional[str] = Field(None, description="Write the report here instead of stdout")
    exhaustive: bool = Field(False, description="Ordered Jacobi triples; every Jacobi sector in the convention search")
    verbose: bool = False
    adjoint: bool = False
    emit: Optional[str] = Field(None, description="JSON file for passing conventions")

    @field_validator("n")
    @classmethod
    def _grading_modulus(cls, v: int) -> int:
        if v in (1, 2):
            raise ValueError(f"n={v} degenerates the color structure; use n=0 or n>=3")
        return v

    def context(self) -> SuiteContext:
        return SuiteContext(
            n=self.n,
            formulation=self.formulation,
            kappa=self.kappa,
            kappa_overrides=self.kappa_overrides,
            seed=self.seed,
            samples=self.samples,
            exhaustive=self.exhaustive,
        )


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=settings.default_n, help="Grading modulus (0 for Z^3)")
    common.add_argument(
        "--formulation",
        choices=["two", "four"],
        default=settings.default_formulation,
        help="Two- or four-component spinors",
    )
    common.add_argument(
        "--kappa",
        action="append",
        default=[],
        metavar="d=VAL",
        help="kappa for one sector (d=VAL) or for all sectors (VAL); repeatable",
    )
    common.add_argument("--seed", type=int, default=settings.seed, help="Seed of the randomised checks")
    common.add_argument("--samples", type=int, default=settings.samples, help="Random samples per check")
    common.add_argument(
        "--report",
        choices=["text", "json"],
        default=settings.report_format,
        help="Report format",
    )
    common.add_argument("--out", type=str, default=None, help="Write the report to a file")
    common.add_argument("--exhaustive", action="store_true", help="Ordered Jacobi triples; no sector restriction in the convention search")
    common.add_argument("--verbose", action="store_true", help="Log progress at INFO level")

    parser = argparse.ArgumentParser(
        prog="colorpoincare",
        description="Verify the color Poincare superalgebra, its representation and supergroup",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("target", choices=list(SUITES) + ["all"], help="Suite to run")

    table = commands.add_parser("table", parents=[common], help="Print a table")
    table.add_argument("target", choices=TABLES, help="Table to print")

    evaluate = commands.add_parser("eval", parents=[common], help="Normal-order an expression")
    evaluate.add_argument("target", help="Expression, e.g. \"th_r[1]*th_g[1]\"")
    mode = evaluate.add_mutually_exclusive_group()
    mode.add_argument("--normal-form", action="store_true", help="Print the normal form (default)")
    mode.add_argument("--adjoint", action="store_true", help="Print the # adjoint")

    conventions = commands.add_parser("conventions", parents=[common], help="Convention search")
    conventions.add_argument("target", choices=["search"], help="Action")
    conventions.add_argument("--emit", type=str, default=None, help="Write passing conventions as JSON")
    return parser


def parse_kappa(values: Sequence[str]) -> Dict:
    """['3', 'r=5'] -> {'kappa': '3', 'kappa_overrides': {'r': '5'}}."""
    out: Dict = {"kappa": get_settings().default_kappa, "kappa_overrides": {}}
    for value in values:
        if "=" in value:
            sector, _, number = value.partition("=")
            out["kappa_overrides"][sector.strip()] = number.strip()
        else:
            out["kappa"] = value.strip()
    return out


def print_report(reports: List[Report]):
    """Print a formatted verification report."""
    passed = sum(1 for r in reports if r.passed)
    cases = sum(r.case_count for r in reports)

    print("\n" + "=" * 70)
    print("  VERIFICATION REPORT")
    print("=" * 70)

    print(f"\n  Reports:      {len(reports)}")
    print(f"  Passed:       {passed}")
    print(f"  Failed:       {len(reports) - passed}")
    print(f"  Cases:        {cases}")

    for report in reports:
        print()
        for line in report.to_text().splitlines():
            print(f"  {line}")

    print("\n" + "=" * 70)


def write_output(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
        print(f"\nResults written to {out}")
    else:
        print(text)


# --- Commands ---


def run_verify(config: RunConfig) -> int:
    ctx = config.context()
    names = list(SUITES) if config.target == "all" else [config.target]
    reports: List[Report] = []
    for name in names:
        reports.extend(run_suite(name, ctx))

    if config.report == "json":
        write_output(json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False), config.out)
    else:
        print_report(reports)
        if config.out:
            write_output("\n\n".join(r.to_text() for r in reports), config.out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def epsilon_table(ctx: SuiteContext) -> str:
    g = ctx.grading
    cells = {
        (x, y): g.epsilon(g.named(x), g.named(y)).render() for x in MONO_WHITE_NAMES for y in MONO_WHITE_NAMES
    }
    width = max(len(c) for c in cells.values()) + 2
    lines = ["eps".ljust(6) + "".join(name.rjust(width) for name in MONO_WHITE_NAMES)]
    for x in MONO_WHITE_NAMES:
        lines.append(x.ljust(6) + "".join(cells[(x, y)].rjust(width) for y in MONO_WHITE_NAMES))
    return "\n".join(lines)


def brackets_table(ctx: SuiteContext) -> str:
    sc = ctx.sc
    lines = [f"{sc.formulation}-component table, {len(sc.basis)} elements"]
    for a, b in sc.nonzero_pairs():
        lines.append(f"[{sc.basis[a].name}, {sc.basis[b].name}] = {sc.render(sc.get(a, b))}")
    return "\n".join(lines)


def run_table(config: RunConfig) -> int:
    ctx = config.context()
    if config.target == "epsilon":
        text = epsilon_table(ctx)
    elif config.target == "brackets":
        text = brackets_table(ctx)
    else:
        text = ctx.rep.layout.render_grid()
    write_output(text, config.out)
    return EXIT_OK


def run_eval(config: RunConfig) -> int:
    ctx = config.context()
    value = parse_expr(config.target, ctx.algebra)
    if config.adjoint:
        value = value.adjoint()
    if config.report == "json":
        g = ctx.grading
        degrees = [g.name_of(d) for d in value.degrees()]
        write_output(json.dumps({"schema": 1, "value": render(value), "degrees": degrees}), config.out)
    else:
        write_output(render(value), config.out)
    return EXIT_OK


def run_conventions(config: RunConfig) -> int:
    ctx = config.context()
    space = ConventionSpace(
        formulation=config.formulation,
        jacobi_sectors=None if config.exhaustive else QUICK_JACOBI_SECTORS,
    )
    passing = convention_search(space, ctx.grading, ctx.cfg)
    print(f"{len(passing)} passing conventions")
    for cliff in passing:
        print(f"  {cliff.name}")
    if config.emit:
        with open(config.emit, "w", encoding="utf-8") as f:
            json.dump([c.to_dict() for c in passing], f, indent=2, ensure_ascii=False)
        print(f"\nConventions written to {config.emit}")
    return EXIT_OK if passing else EXIT_FAILED


COMMANDS = {
    "verify": run_verify,
    "table": run_table,
    "eval": run_eval,
    "conventions": run_conventions,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Execute one invocation and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    settings = get_settings()
    logging.basicConfig(
        level=logging.INFO if args.verbose else getattr(logging, settings.log_level.upper(), logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = RunConfig(
            command=args.command,
            target=args.target,
            n=args.n,
            formulation=args.formulation,
            seed=args.seed,
            samples=args.samples,
            report=args.report,
            out=args.out,
            exhaustive=args.exhaustive,
            verbose=args.verbose,
            adjoint=getattr(args, "adjoint", False),
            emit=getattr(args, "emit", None),
            **parse_kappa(args.kappa),
        )
    except ValidationError as e:
        print(f"colorpoincare: invalid options: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[config.command](config)
    except ValueError as e:
        logger.error(f"{config.command} failed: {e}")
        print(f"colorpoincare: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
