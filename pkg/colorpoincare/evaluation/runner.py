"""
Chunked parallel execution of checks.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, List, Optional, Sequence, TypeVar

from colorpoincare.core.config import get_settings
from colorpoincare.evaluation.reports import Report, merge_all

logger = logging.getLogger(__name__)

T = TypeVar("T")


def chunked(items: Sequence[T], chunks: int) -> List[Sequence[T]]:
    if not items:
        return []
    size = max(1, -(-len(items) // max(1, chunks)))
    return [items[k:k + size] for k in range(0, len(items), size)]


def parallel_reports(
    name: str,
    items: Sequence[T],
    check: Callable[[Sequence[T], Report], None],
    threads: Optional[int] = None,
    config: Optional[Dict[str, Any]] = None,
) -> Report:
    """
    Run check over chunks of items and merge the chunk reports.

    Args:
        name: Report name.
        items: Work items, split into one chunk per worker.
        check: Fills a fresh Report for one chunk.
        threads: Worker cap (defaults to Settings.threads).
        config: Echoed into the merged report.

    Returns:
        The merged Report. A chunk that raises sets the report error.
    """
    threads = threads or get_settings().threads
    chunks = chunked(items, threads)
    logger.info(f"{name}: {len(items)} items in {len(chunks)} chunks")

    def run_chunk(chunk: Sequence[T]) -> Report:
        report = Report(name=name)
        try:
            check(chunk, report)
        except Exception as e:
            logger.error(f"{name}: chunk failed: {e}")
            report.error = f"{type(e).__name__}: {e}"
        return report

    if threads <= 1 or len(chunks) <= 1:
        results = [run_chunk(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_chunk, chunks))

    merged = merge_all(name, results, config)
    merged.complete()
    if not merged.passed:
        logger.warning(f"{name}: {merged.failure_count} failures")
    return merged
