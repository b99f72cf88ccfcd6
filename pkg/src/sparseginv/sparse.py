"""Coordinate (triplet) sparse matrix storage with a canonical ordering.

Triplets are kept sorted by (column, row) so that Matrix Market round trips
and generated instances are deterministic.
"""

from dataclasses import dataclass, field

import numpy as np

from .validation import as_matrix


@dataclass(eq=False)
class SparseMatrix:
    """Real sparse matrix in canonical coordinate form.

    Invariants enforced on construction: indices in range, no duplicate
    (row, col) pairs, stored values nonzero and finite, entries sorted by
    (col, row).
    """

    rows: int
    cols: int
    row: np.ndarray = field(repr=False)
    col: np.ndarray = field(repr=False)
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        self.row = np.asarray(self.row, dtype=np.int64)
        self.col = np.asarray(self.col, dtype=np.int64)
        self.data = np.asarray(self.data, dtype=float)
        if not (self.row.shape == self.col.shape == self.data.shape) or self.row.ndim != 1:
            raise ValueError("row, col, data must be 1-D arrays of equal length")
        if not np.all(np.isfinite(self.data)):
            raise ValueError("sparse values must be finite")
        if self.data.size:
            if self.row.min(initial=0) < 0 or self.row.max(initial=0) >= self.rows:
                raise ValueError("row index out of range")
            if self.col.min(initial=0) < 0 or self.col.max(initial=0) >= self.cols:
                raise ValueError("col index out of range")
        # canonicalize: drop exact zeros, sort by (col, row), reject duplicates
        keep = self.data != 0.0
        r, c, d = self.row[keep], self.col[keep], self.data[keep]
        order = np.lexsort((r, c))
        r, c, d = r[order], c[order], d[order]
        if r.size > 1:
            dup = (r[1:] == r[:-1]) & (c[1:] == c[:-1])
            if np.any(dup):
                i = int(np.argmax(dup))
                raise ValueError(f"duplicate entry at (row={r[i]}, col={c[i]})")
        self.row, self.col, self.data = r, c, d

    @classmethod
    def from_triplets(cls, rows, cols, triplets):
        """Build from an iterable of (row, col, value) with 0-based indices."""
        trip = list(triplets)
        if trip:
            r, c, d = (np.array(x) for x in zip(*trip))
        else:
            r = c = d = np.empty(0)
        return cls(rows, cols, r, c, d)

    @classmethod
    def from_dense(cls, A):
        """Collect the exactly nonzero entries of a dense matrix."""
        A = as_matrix(A)
        r, c = np.nonzero(A)
        return cls(A.shape[0], A.shape[1], r, c, A[r, c])

    @property
    def nnz(self):
        return int(self.data.size)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def triplets(self):
        """Entries as a list of (row, col, value), in canonical order."""
        return [(int(i), int(j), float(v)) for i, j, v in zip(self.row, self.col, self.data)]

    def to_dense(self):
        A = np.zeros((self.rows, self.cols))
        A[self.row, self.col] = self.data
        return A


def as_dense(M, name="A"):
    """Accept a SparseMatrix or anything array-like; return a dense matrix."""
    if isinstance(M, SparseMatrix):
        return M.to_dense()
    return as_matrix(M, name)
