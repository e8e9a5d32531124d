"""
Verification reports.

Every check produces a Report: a case count, a list of failures with
rendered left and right hand sides, and an optional error. Reports merge
associatively so that chunks verified in parallel combine into one.
"""

import json
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

SCHEMA_VERSION = 1
MAX_LISTED_FAILURES = 50


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


@dataclass
class Failure:
    """One violated identity."""
    context: str
    lhs: str = ""
    rhs: str = "0"

    def to_dict(self) -> Dict[str, str]:
        return {"context": self.context, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class Report:
    """Outcome of one named check."""
    name: str
    config: Dict[str, Any] = field(default_factory=dict)
    case_count: int = 0
    failures: List[Failure] = field(default_factory=list)
    seed: Optional[int] = None
    error: Optional[str] = None
    skipped: bool = False
    started_at: float = field(default_factory=time.time)
    completed_at: Optional[float] = None

    def add_case(self, count: int = 1):
        self.case_count += count

    def add_failure(self, context: str, lhs: Any = "", rhs: Any = "0"):
        self.failures.append(Failure(context, str(lhs), str(rhs)))

    def check(self, condition: bool, context: str, lhs: Any = "", rhs: Any = ""):
        """Count one case and record a failure when the condition is false."""
        self.add_case()
        if not condition:
            self.add_failure(context, lhs, rhs)

    def merge(self, other: "Report") -> "Report":
        """Combine two reports of the same check; associative."""
        errors = [e for e in (self.error, other.error) if e]
        completed = [t for t in (self.completed_at, other.completed_at) if t is not None]
        return Report(
            name=self.name,
            config=dict(self.config),
            case_count=self.case_count + other.case_count,
            failures=self.failures + other.failures,
            seed=self.seed if self.seed is not None else other.seed,
            error="; ".join(errors) or None,
            skipped=self.skipped and other.skipped,
            started_at=min(self.started_at, other.started_at),
            completed_at=max(completed) if completed else None,
        )

    def complete(self) -> "Report":
        self.completed_at = time.time()
        return self

    # --- Aggregate ---

    @property
    def failure_count(self) -> int:
        return len(self.failures)

    @property
    def passed(self) -> bool:
        return not self.failures and self.error is None

    @property
    def verdict(self) -> Verdict:
        if self.skipped and self.passed:
            return Verdict.SKIP
        return Verdict.PASS if self.passed else Verdict.FAIL

    @property
    def duration_s(self) -> float:
        if self.completed_at is None:
            return time.time() - self.started_at
        return self.completed_at - self.started_at

    # --- Reporting ---

    def summary(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "verdict": self.verdict.value,
            "cases": self.case_count,
            "failures": self.failure_count,
            "error": self.error,
            "seed": self.seed,
            "duration_s": round(self.duration_s, 2),
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "check": self.name,
            "config": self.config,
            "case_count": self.case_count,
            "passed": self.passed,
            "verdict": self.verdict.value,
            "seed": self.seed,
            "error": self.error,
            "failures": [f.to_dict() for f in self.failures],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False)

    def to_text(self, limit: int = MAX_LISTED_FAILURES) -> str:
        lines = [
            f"{self.name}: {self.verdict.value.upper()} "
            f"({self.case_count} cases, {self.failure_count} failures)"
        ]
        if self.error:
            lines.append(f"  error: {self.error}")
        for failure in self.failures[:limit]:
            lines.append(f"  - {failure.context}: {failure.lhs} != {failure.rhs}")
        if self.failure_count > limit:
            lines.append(f"  ... {self.failure_count - limit} more")
        return "\n".join(lines)


def merge_all(name: str, reports: List[Report], config: Optional[Dict[str, Any]] = None) -> Report:
    merged = Report(name=name, config=dict(config or {}))
    for report in reports:
        merged = merged.merge(report)
    merged.name = name
    return merged
