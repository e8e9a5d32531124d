"""
Block layout of the 100x100 representation.

Blocks 0..3 are 5x5 (translation/rotation blocks), blocks 4..23 are 4x4
(spinor blocks). Each allowed block position carries a degree:

- table A: positions among blocks 0..3
- table B: rows 0..3 against spinor columns
- table C: spinor rows against columns 0..3
- table D: diagonal spinor blocks, degree zero

All other positions are forbidden. The tables are data; the potential
check in degree_consistency_report validates the transcription.
"""

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from colorpoincare.core.errors import LayoutError
from colorpoincare.core.grading import Degree, Grading
from colorpoincare.evaluation.reports import Report

logger = logging.getLogger(__name__)

BLOCK_SIZES: List[int] = [5] * 4 + [4] * 20
VECTOR_BLOCKS = range(0, 4)
SPINOR_BLOCKS = range(4, 24)

TABLE_A: List[List[str]] = [
    ["0", "r+g", "g+b", "b+r"],
    ["rb+gb", "0", "b+rb", "gb+b"],
    ["gb+bb", "bb+r", "0", "r+gb"],
    ["bb+rb", "g+bb", "rb+g", "0"],
]

# row -> {spinor column: degree}
TABLE_B: Dict[int, Dict[int, str]] = {
    0: {4: "r", 5: "g", 6: "b", 7: "rb", 8: "gb", 9: "bb", 10: "1", 11: "1b"},
    1: {4: "gb", 5: "rb", 9: "1b", 10: "b", 12: "bb", 15: "g", 16: "r", 21: "1"},
    2: {5: "bb", 6: "gb", 7: "1b", 10: "r", 13: "rb", 17: "b", 18: "g", 22: "1"},
    3: {4: "bb", 6: "rb", 8: "1b", 10: "g", 14: "gb", 19: "r", 20: "b", 23: "1"},
}

# spinor row -> {column: degree}
TABLE_C: Dict[int, Dict[int, str]] = {
    4: {0: "rb", 1: "g", 3: "b"},
    5: {0: "gb", 1: "r", 2: "b"},
    6: {0: "bb", 2: "g", 3: "r"},
    7: {0: "r", 2: "1"},
    8: {0: "g", 3: "1"},
    9: {0: "b", 1: "1"},
    10: {0: "1b", 1: "bb", 2: "rb", 3: "gb"},
    11: {0: "1"},
    12: {1: "b"},
    13: {2: "r"},
    14: {3: "g"},
    15: {1: "gb"},
    16: {1: "rb"},
    17: {2: "bb"},
    18: {2: "gb"},
    19: {3: "rb"},
    20: {3: "bb"},
    21: {1: "1b"},
    22: {2: "1b"},
    23: {3: "1b"},
}

# cells whose column alignment in the printed tables is not unambiguous
AMBIGUOUS_CELLS: List[Tuple[int, int]] = sorted(
    [(2, col) for col in TABLE_B[2]]
    + [(row, col) for row in range(12, 24) for col in TABLE_C[row]]
)

# SHA-256 of canonical_rendering(); any edit to the tables changes it
TABLES_DIGEST = "319aaa2ec7b8cb977f50491ada6413dc52fe197b32540aec90f77968ad4356aa"


@dataclass(frozen=True, eq=False)
class BlockLayout:
    grading: Grading
    block_sizes: List[int]
    cells: Dict[Tuple[int, int], str]
    offsets: List[int] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return sum(self.block_sizes)

    @property
    def block_count(self) -> int:
        return len(self.block_sizes)

    def offset(self, block: int) -> int:
        return self.offsets[block]

    def size(self, block: int) -> int:
        return self.block_sizes[block]

    def block_of(self, index: int) -> int:
        for block in range(self.block_count - 1, -1, -1):
            if index >= self.offsets[block]:
                return block
        raise LayoutError(f"index {index} outside the layout")

    def allowed(self, i: int, j: int) -> bool:
        return (i, j) in self.cells

    def degree_name(self, i: int, j: int) -> Optional[str]:
        return self.cells.get((i, j))

    def degree_of_block(self, i: int, j: int) -> Optional[Degree]:
        name = self.cells.get((i, j))
        if name is None:
            return None
        return self.grading.zero if name == "0" else self.grading.named(name)

    def cells_of_degree(self, name: str, table: str) -> List[Tuple[int, int]]:
        """Positions of the given degree name in table "B" or "C"."""
        if table == "B":
            source = [(i, s) for i, row in TABLE_B.items() for s in row]
        elif table == "C":
            source = [(s, i) for s, row in TABLE_C.items() for i in row]
        else:
            raise LayoutError(f"unknown table {table!r}")
        return sorted(p for p in source if self.cells[p] == name)

    def position_of(self, name: str) -> Tuple[int, int]:
        """The unique table-A position holding a bicolor degree."""
        for i in VECTOR_BLOCKS:
            for j in VECTOR_BLOCKS:
                if TABLE_A[i][j] == name and i != j:
                    return (i, j)
        raise LayoutError(f"no table A position of degree {name}")

    def render_grid(self) -> str:
        width = 6
        header = "    " + "".join(f"{j:>{width}}" for j in range(self.block_count))
        lines = [header]
        for i in range(self.block_count):
            row = "".join(
                f"{self.cells.get((i, j), '.'):>{width}}" for j in range(self.block_count)
            )
            lines.append(f"{i:>3} {row}")
        return "\n".join(lines)

    def to_dict(self) -> Dict:
        return {
            "block_sizes": self.block_sizes,
            "cells": [
                {"row": i, "col": j, "degree": name} for (i, j), name in sorted(self.cells.items())
            ],
            "ambiguous": [list(c) for c in AMBIGUOUS_CELLS],
        }


def _cells() -> Dict[Tuple[int, int], str]:
    cells: Dict[Tuple[int, int], str] = {}
    for i in VECTOR_BLOCKS:
        for j in VECTOR_BLOCKS:
            cells[(i, j)] = TABLE_A[i][j]
    for i, row in TABLE_B.items():
        for s, name in row.items():
            cells[(i, s)] = name
    for s, row in TABLE_C.items():
        for i, name in row.items():
            cells[(s, i)] = name
    for s in SPINOR_BLOCKS:
        cells[(s, s)] = "0"
    return cells


def canonical_rendering() -> str:
    """One "row,col:degree" line per allowed block position, in position order."""
    return "\n".join(f"{i},{j}:{name}" for (i, j), name in sorted(_cells().items()))


def tables_digest() -> str:
    return hashlib.sha256(canonical_rendering().encode("utf-8")).hexdigest()


def block_layout(grading: Optional[Grading] = None) -> BlockLayout:
    """The transcribed layout: tables A, B, C and the diagonal of D."""
    cells = _cells()
    offsets, total = [], 0
    for size in BLOCK_SIZES:
        offsets.append(total)
        total += size
    return BlockLayout(grading or Grading(), list(BLOCK_SIZES), cells, offsets)


def potential(layout: BlockLayout) -> Dict[int, Degree]:
    """phi with degree(i, j) = phi(i) - phi(j), grown from phi(0) = 0 along allowed cells."""
    g = layout.grading
    phi: Dict[int, Degree] = {0: g.zero}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for (a, b) in layout.cells:
            if a == i and b not in phi:
                phi[b] = g.sub(phi[i], layout.degree_of_block(a, b))  # type: ignore[arg-type]
                frontier.append(b)
            elif b == i and a not in phi:
                phi[a] = g.add(phi[i], layout.degree_of_block(a, b))  # type: ignore[arg-type]
                frontier.append(a)
    return phi


def degree_consistency_report(layout: Optional[BlockLayout] = None) -> Report:
    """Digest, path consistency and antisymmetry of the transcribed degree tables."""
    layout = layout or block_layout()
    g = layout.grading
    report = Report(
        name="layout",
        config={"n": g.n, "cells": len(layout.cells), "ambiguous": len(AMBIGUOUS_CELLS)},
    )
    report.check(layout.dimension == 100, "total dimension", layout.dimension, 100)
    digest = tables_digest()
    report.check(digest == TABLES_DIGEST, "tables digest", digest, TABLES_DIGEST)
    phi = potential(layout)
    report.check(
        len(phi) == layout.block_count,
        "every block reachable",
        len(phi),
        layout.block_count,
    )
    for (i, j), name in sorted(layout.cells.items()):
        d = layout.degree_of_block(i, j)
        if i in phi and j in phi:
            expected = g.sub(phi[i], phi[j])
            report.check(d == expected, f"degree({i},{j})", g.name_of(d), g.name_of(expected))
        mirror = layout.degree_of_block(j, i)
        if mirror is not None:
            report.check(mirror == g.neg(d), f"degree({j},{i}) = -degree({i},{j})", g.name_of(mirror), g.name_of(g.neg(d)))
    for i in SPINOR_BLOCKS:
        for j in SPINOR_BLOCKS:
            if i != j:
                report.check(not layout.allowed(i, j), f"D block ({i},{j}) forbidden", layout.degree_name(i, j), None)
    report.complete()
    if not report.passed:
        logger.warning(f"layout: {report.failure_count} inconsistent cells")
    return report
