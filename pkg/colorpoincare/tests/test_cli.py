"""
Tests for the expression parser and the command-line front end.

Tests cover: parsing and normal ordering of expressions, error positions,
render/parse round trips, option validation and exit codes.
"""

import json
from unittest.mock import patch

import pytest

from colorpoincare.cli.main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, parse_kappa, run
from colorpoincare.cli.parser import parse_expr, render
from colorpoincare.core.errors import ExpressionSyntaxError, UnknownElementError
from colorpoincare.core.grassmann import GrassmannAlgebra
from colorpoincare.evaluation.reports import Report
from colorpoincare.evaluation.suites import ROUND_TRIP_CORPUS


def _failing_suite(ctx):
    report = Report(name="always.fails")
    report.check(False, "injected")
    return [report.complete()]


# --- Parser Tests ---


class TestParseExpr:
    def test_normal_orders_products(self):
        assert render(parse_expr("th_g[1]*th_r[1]")) == "q^-1*th_r[1]*th_g[1]"

    def test_displayed_rule_vanishes(self):
        assert parse_expr("th_r[1]*th_g[1] - q*th_g[1]*th_r[1]").is_zero()

    def test_scalar_arithmetic(self):
        alg = GrassmannAlgebra()
        assert parse_expr("(1/2)*(1-q) + (1/2)*q", alg) == alg.scalar(alg.field.rational(1) / 2)
        assert parse_expr("i^2", alg) == alg.scalar(-1)
        assert parse_expr("z8^2", alg) == alg.scalar(alg.field.i())
        assert parse_expr("q^-1*q", alg) == alg.one

    def test_precedence(self):
        alg = GrassmannAlgebra()
        assert parse_expr("1 + 2*3", alg) == alg.scalar(7)
        assert parse_expr("-2^2", alg) == alg.scalar(-4)

    def test_square_of_sum(self):
        value = parse_expr("(th_r[1] + th_g[2])^2")
        assert render(value) == "(q^-1 + 1)*th_r[1]*th_g[2]"

    @pytest.mark.parametrize("text", ROUND_TRIP_CORPUS)
    def test_round_trip(self, text):
        alg = GrassmannAlgebra()
        value = parse_expr(text, alg)
        assert parse_expr(render(value), alg) == value

    def test_syntax_error_position(self):
        with pytest.raises(ExpressionSyntaxError) as info:
            parse_expr("th_r[1] * * th_g[1]")
        assert info.value.position is not None

    def test_unknown_generator(self):
        with pytest.raises(UnknownElementError):
            parse_expr("th_x[1]")

    def test_unknown_symbol(self):
        with pytest.raises(UnknownElementError):
            parse_expr("w")

    def test_index_must_be_positive(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expr("eta[0]")

    def test_negative_power_of_generator(self):
        with pytest.raises(ExpressionSyntaxError):
            parse_expr("eta[1]^-1")

    def test_zero_denominator(self):
        with pytest.raises(ExpressionSyntaxError, match="zero denominator"):
            parse_expr("th_r[1] * 1/0")

    @pytest.mark.parametrize("text", ["z0", "z00", "z0 * eta[1]"])
    def test_root_of_unity_order_must_be_positive(self, text):
        with pytest.raises(ExpressionSyntaxError, match="root of unity"):
            parse_expr(text)


# --- Option Tests ---


class TestOptions:
    def test_parse_kappa(self):
        assert parse_kappa(["3", "r=5"]) == {"kappa": "3", "kappa_overrides": {"r": "5"}}

    def test_parse_kappa_defaults(self):
        assert parse_kappa([])["kappa_overrides"] == {}


# --- Command Tests ---


class TestRun:
    def test_verify_epsilon(self, capsys):
        assert run(["verify", "epsilon", "--samples", "5"]) == EXIT_OK
        assert "VERIFICATION REPORT" in capsys.readouterr().out

    def test_verify_epsilon_json(self, capsys):
        assert run(["verify", "epsilon", "--n", "3", "--samples", "5", "--report", "json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert {r["check"] for r in data} == {"epsilon[n=3]", "classification[n=3]"}
        assert all(r["schema"] == 1 for r in data)

    def test_failing_suite_exit_code(self, capsys):
        with patch.dict("colorpoincare.evaluation.suites.SUITES", {"injected": _failing_suite}):
            assert run(["verify", "injected"]) == EXIT_FAILED

    def test_raising_suite_becomes_error_report(self, capsys):
        def boom(ctx):
            raise RuntimeError("boom")

        with patch.dict("colorpoincare.evaluation.suites.SUITES", {"boom": boom}):
            assert run(["verify", "boom", "--report", "json"]) == EXIT_FAILED
        data = json.loads(capsys.readouterr().out)
        assert data[0]["error"] == "RuntimeError: boom"

    def test_unknown_suite(self, capsys):
        assert run(["verify", "nope"]) == EXIT_USAGE

    def test_degenerate_modulus(self, capsys):
        assert run(["verify", "epsilon", "--n", "2"]) == EXIT_USAGE

    def test_eval_normal_form(self, capsys):
        assert run(["eval", "th_g[1]*th_r[1]"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "q^-1*th_r[1]*th_g[1]"

    def test_eval_adjoint(self, capsys):
        assert run(["eval", "th_r[1]*th_g[1]", "--adjoint"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "-q*th_r[1]*th_g[1]"

    def test_eval_json(self, capsys):
        assert run(["eval", "--report", "json", "th_r[1]*th_g[1]"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data == {"schema": 1, "value": "th_r[1]*th_g[1]", "degrees": ["r+g"]}

    def test_eval_syntax_error(self, capsys):
        assert run(["eval", "th_r[1] +"]) == EXIT_USAGE
        assert "ExpressionSyntaxError" in capsys.readouterr().err

    @pytest.mark.parametrize("text", ["1/0", "z0"])
    def test_eval_degenerate_scalar_is_usage_error(self, capsys, text):
        assert run(["eval", text]) == EXIT_USAGE
        assert "ExpressionSyntaxError" in capsys.readouterr().err

    def test_adjoint_and_normal_form_exclusive(self, capsys):
        assert run(["eval", "eta[1]", "--adjoint", "--normal-form"]) == EXIT_USAGE

    def test_epsilon_table(self, capsys):
        assert run(["table", "epsilon"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.splitlines()[0].split() == ["eps", "1", "r", "g", "b", "1b", "rb", "gb", "bb"]

    def test_blocks_table_to_file(self, tmp_path, capsys):
        out = tmp_path / "blocks.txt"
        assert run(["table", "blocks", "--out", str(out)]) == EXIT_OK
        assert "r+g" in out.read_text(encoding="utf-8")
