"""
Sparse supermatrices over the block layout.

Storage is a dict of rows, each a dict of nonzero entries keyed by global
column index. Entries are Scalars or Multivectors; products follow the
row-intersection scheme of dict-of-keys sparse matrices.
"""

import logging
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

import numpy as np

from colorpoincare.core.errors import LayoutError
from colorpoincare.core.grading import Degree
from colorpoincare.core.grassmann import Multivector
from colorpoincare.core.scalars import Scalar
from colorpoincare.representation.layout import BlockLayout

logger = logging.getLogger(__name__)

Entry = Union[Scalar, Multivector]
Rows = Dict[int, Dict[int, Entry]]


def _matmul(A: Rows, B: Rows) -> Rows:
    C: Rows = {}
    B_knz = set(B)
    for i, Ai in A.items():
        Ci: Dict[int, Entry] = {}
        for k in set(Ai) & B_knz:
            Aik = Ai[k]
            for j, Bkj in B[k].items():
                Cij = Ci.get(j)
                Cij = Aik * Bkj if Cij is None else Cij + Aik * Bkj
                if Cij:
                    Ci[j] = Cij
                else:
                    Ci.pop(j, None)
        if Ci:
            C[i] = Ci
    return C


def _add(A: Rows, B: Rows, sign: int = 1) -> Rows:
    C: Rows = {i: dict(row) for i, row in A.items()}
    for i, Bi in B.items():
        Ci = C.setdefault(i, {})
        for j, v in Bi.items():
            v = v if sign > 0 else -v
            total = Ci.get(j)
            total = v if total is None else total + v
            if total:
                Ci[j] = total
            else:
                Ci.pop(j, None)
        if not Ci:
            del C[i]
    return C


class SuperMatrix:
    """Sparse matrix on a BlockLayout."""

    def __init__(self, layout: BlockLayout, rows: Optional[Rows] = None):
        self.layout = layout
        self.rows: Rows = rows or {}

    @classmethod
    def zeros(cls, layout: BlockLayout) -> "SuperMatrix":
        return cls(layout, {})

    def copy(self) -> "SuperMatrix":
        return SuperMatrix(self.layout, {i: dict(r) for i, r in self.rows.items()})

    # --- Blocks ---

    def set_block(self, i: int, j: int, block: np.ndarray, check: bool = True):
        """Add a dense block at block position (i, j)."""
        lay = self.layout
        if check and not lay.allowed(i, j):
            raise LayoutError(f"block ({i},{j}) is forbidden by the layout")
        if block.shape != (lay.size(i), lay.size(j)):
            raise LayoutError(
                f"block ({i},{j}) must be {lay.size(i)}x{lay.size(j)}, got {block.shape}"
            )
        r0, c0 = lay.offset(i), lay.offset(j)
        update: Rows = {}
        for (a, b), value in np.ndenumerate(block):
            if value:
                update.setdefault(r0 + a, {})[c0 + b] = value
        self.rows = _add(self.rows, update)

    def block(self, i: int, j: int, zero: Entry) -> np.ndarray:
        lay = self.layout
        out = np.empty((lay.size(i), lay.size(j)), dtype=object)
        out.fill(zero)
        r0, c0 = lay.offset(i), lay.offset(j)
        for a in range(lay.size(i)):
            row = self.rows.get(r0 + a)
            if not row:
                continue
            for b in range(lay.size(j)):
                value = row.get(c0 + b)
                if value is not None:
                    out[a, b] = value
        return out

    def nonzero_blocks(self) -> Set[Tuple[int, int]]:
        lay = self.layout
        return {
            (lay.block_of(i), lay.block_of(j)) for i, row in self.rows.items() for j in row
        }

    def entries(self) -> Iterator[Tuple[int, int, Entry]]:
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def get(self, i: int, j: int) -> Optional[Entry]:
        return self.rows.get(i, {}).get(j)

    # --- Arithmetic ---

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix(self.layout, _add(self.rows, other.rows))

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix(self.layout, _add(self.rows, other.rows, -1))

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.layout, {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def scale(self, c: Entry) -> "SuperMatrix":
        """c * M with c multiplying each entry from the left."""
        out: Rows = {}
        for i, row in self.rows.items():
            new = {}
            for j, v in row.items():
                w = c * v
                if w:
                    new[j] = w
            if new:
                out[i] = new
        return SuperMatrix(self.layout, out)

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return SuperMatrix(self.layout, _matmul(self.rows, other.rows))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.rows

    # --- Degrees ---

    def degrees(self) -> List[Degree]:
        """Distinct matrix degrees: position degree minus entry degree."""
        lay = self.layout
        g = lay.grading
        found = set()
        for i, j, value in self.entries():
            position = lay.degree_of_block(lay.block_of(i), lay.block_of(j))
            if position is None:
                raise LayoutError(f"entry ({i},{j}) lies in a forbidden block")
            if isinstance(value, Multivector):
                for d in value.degrees():
                    found.add(g.sub(position, d))
            else:
                found.add(position)
        return sorted(found)

    def degree(self) -> Optional[Degree]:
        degrees = self.degrees()
        return degrees[0] if len(degrees) == 1 else None

    def forbidden_entries(self) -> List[Tuple[int, int]]:
        lay = self.layout
        return [
            (i, j)
            for i, j, _ in self.entries()
            if not lay.allowed(lay.block_of(i), lay.block_of(j))
        ]

    def render(self, limit: int = 20) -> str:
        lines = []
        for k, (i, j, v) in enumerate(self.entries()):
            if k >= limit:
                lines.append(f"... {self.nnz() - limit} more entries")
                break
            lines.append(f"[{i},{j}] = {v}")
        return "\n".join(lines) or "0"

    def __repr__(self) -> str:
        return f"SuperMatrix(nnz={self.nnz()})"
