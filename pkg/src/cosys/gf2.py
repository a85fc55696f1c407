"""Dense linear algebra over GF(2) with rows packed into Python ints.

Bit ``c`` of a row integer holds the entry in column ``c``.  Rendered as a
0/1 string, the first character is column 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_DIM = 64


class RankDeficient(ValueError):
    pass


@dataclass(frozen=True)
class Gf2Matrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        if len(self.rows) > MAX_DIM or self.ncols > MAX_DIM:
            raise ValueError(f"GF(2) matrices are limited to {MAX_DIM}x{MAX_DIM}")
        if self.ncols < 0:
            raise ValueError("negative column count")
        full = (1 << self.ncols) - 1
        for r in self.rows:
            if r < 0 or r & ~full:
                raise ValueError("row has entries outside the column range")

    @classmethod
    def from_lists(cls, rows: Sequence[Sequence[int]], ncols: int | None = None) -> "Gf2Matrix":
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != ncols:
                raise ValueError("ragged matrix")
            v = 0
            for c, bit in enumerate(row):
                if bit & 1:
                    v |= 1 << c
            packed.append(v)
        return cls(tuple(packed), ncols)

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "Gf2Matrix":
        rows = [r.strip() for r in rows]
        if any(set(r) - {"0", "1"} for r in rows):
            raise ValueError("rows must be 0/1 strings")
        return cls.from_lists([[int(ch) for ch in r] for r in rows], len(rows[0]) if rows else 0)

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def column(self, j: int) -> int:
        """Column ``j`` packed with bit ``i`` = row ``i``."""
        v = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                v |= 1 << i
        return v

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.ncols)]

    def to_lists(self) -> list[list[int]]:
        return [[(r >> c) & 1 for c in range(self.ncols)] for r in self.rows]

    def to_strings(self) -> list[str]:
        return [row_to_string(r, self.ncols) for r in self.rows]

    def select_columns(self, cols: Sequence[int]) -> "Gf2Matrix":
        rows = []
        for r in self.rows:
            v = 0
            for k, c in enumerate(cols):
                if (r >> c) & 1:
                    v |= 1 << k
            rows.append(v)
        return Gf2Matrix(tuple(rows), len(cols))

    def select_rows(self, idx: Sequence[int]) -> "Gf2Matrix":
        return Gf2Matrix(tuple(self.rows[i] for i in idx), self.ncols)

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(tuple(self.columns()), self.nrows)

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for k in range(self.ncols):
                if (r >> k) & 1:
                    acc ^= other.rows[k]
            out.append(acc)
        return Gf2Matrix(tuple(out), other.ncols)

    def __str__(self) -> str:
        return "\n".join(self.to_strings())


def row_to_string(row: int, ncols: int) -> str:
    return "".join("1" if (row >> c) & 1 else "0" for c in range(ncols))


def popcount(x: int) -> int:
    return bin(x).count("1")


def rref(a: Gf2Matrix) -> tuple[Gf2Matrix, list[int], int]:
    """Reduced row echelon form.  Zero rows are dropped from the result."""
    rows = list(a.rows)
    pivots: list[int] = []
    r = 0
    for c in range(a.ncols):
        bit = 1 << c
        pivot = next((i for i in range(r, len(rows)) if rows[i] & bit), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i] & bit:
                rows[i] ^= rows[r]
        pivots.append(c)
        r += 1
    return Gf2Matrix(tuple(rows[:r]), a.ncols), pivots, r


def rank(a: Gf2Matrix) -> int:
    return rank_of_vectors(a.rows)


def rank_of_vectors(vectors: Iterable[int]) -> int:
    # xor basis keyed by leading bit
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def row_space_vectors(a: Gf2Matrix) -> list[int]:
    """All nonzero vectors of the row space, each once, in Gray-code order."""
    basis = rref(a)[0].rows
    out = []
    v = 0
    for k in range(1, 1 << len(basis)):
        # bit flipped between Gray codes k-1 and k
        v ^= basis[(k & -k).bit_length() - 1]
        out.append(v)
    return out


def standard_form(a: Gf2Matrix) -> tuple[Gf2Matrix, list[int]]:
    """Permute columns and row reduce to ``[I | D]``.

    Returns ``(B, perm)`` with column ``j`` of ``B`` taken from column
    ``perm[j]`` of ``a``.  Pivot columns of the RREF come first, so an input
    already of the form ``[I | D]`` gets the identity permutation.  When every
    unit vector already occurs as a column, those columns are used as they
    stand and no row operations happen.
    """
    cols = a.columns()
    units = [next((c for c, v in enumerate(cols) if v == 1 << i), None) for i in range(a.nrows)]
    if None not in units:
        chosen = set(units)
        perm = units + [c for c in range(a.ncols) if c not in chosen]
        return a.select_columns(perm), perm
    red, pivots, r = rref(a)
    if r < a.nrows:
        raise RankDeficient(f"matrix has rank {r} < {a.nrows} rows")
    pivot_set = set(pivots)
    perm = pivots + [c for c in range(a.ncols) if c not in pivot_set]
    return red.select_columns(perm), perm


def dual_representation(a: Gf2Matrix) -> Gf2Matrix:
    """Full-row-rank matrix whose row space is the orthogonal complement.

    Column order is preserved.  In standard coordinates ``[I | D]`` this is
    ``[D^T | I]``, mapped back through the column permutation.
    """
    b, perm = standard_form(a)
    r, n = a.nrows, a.ncols
    out = []
    for k in range(n - r):
        j = r + k  # non-pivot column of b
        v = 1 << perm[j]
        for i in range(r):
            if (b.rows[i] >> j) & 1:
                v |= 1 << perm[i]
        out.append(v)
    return Gf2Matrix(tuple(out), n)
