"""Exact sparse linear algebra: reduced row echelon form, rank, kernels.

Vectors are dicts ``{column: nonzero value}``.  Columns are arbitrary
sortable keys; the column order decides pivots (smallest column first).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Hashable, Iterable, List, Tuple

from .field import Field

Vector = Dict[Hashable, object]


@dataclass
class SparseMatrix:
    field: Field
    rows: int
    cols: int
    entries: Dict[Tuple[int, int], object] = dc_field(default_factory=dict)

    def __post_init__(self):
        for (r, c), v in list(self.entries.items()):
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if not v:
                del self.entries[(r, c)]

    @classmethod
    def from_dense(cls, field: Field, data) -> "SparseMatrix":
        data = [list(r) for r in data]
        cols = len(data[0]) if data else 0
        entries = {(i, j): field(x) for i, r in enumerate(data) for j, x in enumerate(r) if field(x)}
        return cls(field, len(data), cols, entries)

    @classmethod
    def from_rows(cls, field: Field, rows: List[Vector], cols: int) -> "SparseMatrix":
        entries = {(i, j): v for i, r in enumerate(rows) for j, v in r.items()}
        return cls(field, len(rows), cols, entries)

    def row_vectors(self) -> List[Vector]:
        out: List[Vector] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_dense(self):
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.field, self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def apply(self, v: Vector) -> Vector:
        F = self.field
        out: Vector = {}
        for (r, c), x in self.entries.items():
            y = v.get(c)
            if y:
                s = F.add(out.get(r, F.zero), F.mul(x, y))
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out


class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Every stored row is monic at its pivot (its smallest column) and has
    zeros in all other pivot columns.
    """

    def __init__(self, field: Field):
        self.field = field
        self.pivots: Dict[Hashable, Vector] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Vector) -> Vector:
        """Canonical representative of ``v`` modulo the span (new dict)."""
        v = dict(v)
        F = self.field
        piv = self.pivots
        for c in [c for c in v if c in piv]:
            a = v.get(c)
            if a:
                F.axpy(v, F.neg(a), piv[c])
        return v

    def add(self, v: Vector) -> bool:
        """Insert ``v``; returns True when it enlarged the span."""
        r = self.reduce(v)
        if not r:
            return False
        F = self.field
        c0 = min(r)
        r = F.scale(r, F.inv(r[c0]))
        for row in self.pivots.values():
            a = row.get(c0)
            if a:
                F.axpy(row, F.neg(a), r)
        self.pivots[c0] = r
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def rows(self) -> List[Vector]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def pivot_cols(self) -> List[Hashable]:
        return sorted(self.pivots)


def echelon_of(field: Field, vectors: Iterable[Vector]) -> Echelon:
    E = Echelon(field)
    for v in vectors:
        E.add(v)
    return E


def rref(M: SparseMatrix):
    """Returns (rank, R, pivot_cols) with R the reduced row echelon form of M."""
    E = echelon_of(M.field, M.row_vectors())
    rows = E.rows()
    R = SparseMatrix.from_rows(M.field, rows + [{}] * (M.rows - len(rows)), M.cols)
    return E.rank, R, E.pivot_cols()


def rank(M: SparseMatrix) -> int:
    return echelon_of(M.field, M.row_vectors()).rank


def kernel_from_echelon(E: Echelon, columns: List[Hashable]) -> List[Vector]:
    """Right null space basis of the row space held by ``E``.

    One vector per free column, in the order of ``columns``; the free
    coordinate is 1.
    """
    F = E.field
    piv = E.pivots
    out = []
    for fc in columns:
        if fc in piv:
            continue
        v = {fc: F.one}
        for pc, row in piv.items():
            a = row.get(fc)
            if a:
                v[pc] = F.neg(a)
        out.append(v)
    return out


def kernel_basis(M: SparseMatrix) -> List[Vector]:
    E = echelon_of(M.field, M.row_vectors())
    return kernel_from_echelon(E, list(range(M.cols)))


def kernel_of_columns(field: Field, images: List[Vector]) -> List[Vector]:
    """Kernel of the map sending basis vector k to ``images[k]``.

    Returned vectors are indexed by k, canonical (reduced echelon against the
    free columns of the transposed system).
    """
    rows: Dict[Hashable, Vector] = {}
    for k, img in enumerate(images):
        for r, x in img.items():
            rows.setdefault(r, {})[k] = x
    E = echelon_of(field, rows.values())
    return kernel_from_echelon(E, list(range(len(images))))
