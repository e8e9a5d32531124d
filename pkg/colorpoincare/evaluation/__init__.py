"""
Verification reports and the parallel runner.
"""
from .reports import Failure, Report, Verdict
from .runner import parallel_reports

__all__ = [
    "Failure",
    "Report",
    "Verdict",
    "parallel_reports",
]
