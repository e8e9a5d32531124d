"""
Tests for verification reports and the parallel runner.

Tests cover: case and failure bookkeeping, verdicts, merging, JSON
serialisation and chunked execution.
"""

import json

from colorpoincare.evaluation.reports import SCHEMA_VERSION, Report, Verdict, merge_all
from colorpoincare.evaluation.runner import chunked, parallel_reports


def _make_report(name: str = "demo", cases: int = 3, failures: int = 0) -> Report:
    report = Report(name=name, config={"n": 0})
    report.add_case(cases)
    for k in range(failures):
        report.add_failure(f"case {k}", "lhs", "rhs")
    return report.complete()


# --- Report Tests ---


class TestReport:
    def test_check_counts_cases(self):
        report = Report(name="demo")
        report.check(True, "ok")
        report.check(False, "bad", 1, 2)
        assert report.case_count == 2
        assert report.failure_count == 1
        assert report.failures[0].lhs == "1"
        assert report.failures[0].rhs == "2"

    def test_verdicts(self):
        assert _make_report().verdict == Verdict.PASS
        assert _make_report(failures=1).verdict == Verdict.FAIL
        skipped = _make_report()
        skipped.skipped = True
        assert skipped.verdict == Verdict.SKIP

    def test_error_fails_report(self):
        report = _make_report()
        report.error = "ValueError: boom"
        assert not report.passed
        assert report.verdict == Verdict.FAIL

    def test_to_dict_schema(self):
        data = json.loads(_make_report(failures=2).to_json())
        assert data["schema"] == SCHEMA_VERSION == 1
        assert data["check"] == "demo"
        assert data["case_count"] == 3
        assert data["passed"] is False
        assert data["verdict"] == "fail"
        assert data["failures"][0] == {"context": "case 0", "lhs": "lhs", "rhs": "rhs"}

    def test_to_text_truncates(self):
        text = _make_report(failures=5).to_text(limit=2)
        assert "demo: FAIL (3 cases, 5 failures)" in text
        assert "... 3 more" in text

    def test_summary(self):
        summary = _make_report().summary()
        assert summary["verdict"] == "pass"
        assert summary["cases"] == 3


# --- Merge Tests ---


class TestMerge:
    def test_merge_adds_cases_and_failures(self):
        merged = _make_report(cases=2, failures=1).merge(_make_report(cases=5))
        assert merged.case_count == 7
        assert merged.failure_count == 1

    def test_merge_is_associative(self):
        a, b, c = _make_report(cases=1), _make_report(cases=2, failures=1), _make_report(cases=3)
        left = a.merge(b).merge(c)
        right = a.merge(b.merge(c))
        assert left.case_count == right.case_count
        assert [f.context for f in left.failures] == [f.context for f in right.failures]

    def test_merge_joins_errors(self):
        a, b = _make_report(), _make_report()
        a.error, b.error = "first", "second"
        assert a.merge(b).error == "first; second"

    def test_merge_all_renames(self):
        merged = merge_all("total", [_make_report("x"), _make_report("y")], {"k": 1})
        assert merged.name == "total"
        assert merged.config == {"k": 1}
        assert merged.case_count == 6


# --- Runner Tests ---


class TestRunner:
    def test_chunked_covers_items(self):
        chunks = chunked(list(range(10)), 3)
        assert len(chunks) == 3
        assert [x for c in chunks for x in c] == list(range(10))

    def test_chunked_empty(self):
        assert chunked([], 4) == []

    def test_parallel_reports_merges_chunks(self):
        def check(chunk, report):
            for x in chunk:
                report.check(x % 7 != 0, f"x={x}")

        report = parallel_reports("sevens", list(range(1, 30)), check, threads=4)
        assert report.case_count == 29
        assert sorted(f.context for f in report.failures) == ["x=14", "x=21", "x=28", "x=7"]
        assert report.completed_at is not None

    def test_parallel_reports_captures_errors(self):
        def check(chunk, report):
            raise RuntimeError("boom")

        report = parallel_reports("broken", [1, 2], check, threads=1)
        assert report.error == "RuntimeError: boom"
        assert not report.passed
