"""Coordinate-format sparse matrices for graph adjacency.

An entry (r, c, v) represents a directed edge r -> c with weight v. The
propagation product (see ``ops.spmm``) sends messages along stored
entries: row r's features flow into row c of the output.
"""

import numpy as np


class SparseMatrix:
    """Sparse matrix with unique (row, col) coordinates, float64 values."""

    __slots__ = ("rows", "cols", "row_idx", "col_idx", "values")

    def __init__(self, rows, cols, row_idx, col_idx, values, _validate=True):
        self.rows = int(rows)
        self.cols = int(cols)
        self.row_idx = np.ascontiguousarray(row_idx, dtype=np.int64)
        self.col_idx = np.ascontiguousarray(col_idx, dtype=np.int64)
        self.values = np.ascontiguousarray(values, dtype=np.float64)
        if _validate:
            self._validate()

    def _validate(self):
        n = len(self.values)
        if len(self.row_idx) != n or len(self.col_idx) != n:
            raise ValueError("entry arrays must have equal length")
        if n:
            if self.row_idx.min() < 0 or self.row_idx.max() >= self.rows:
                raise ValueError("row index out of bounds")
            if self.col_idx.min() < 0 or self.col_idx.max() >= self.cols:
                raise ValueError("col index out of bounds")
            keys = self.row_idx * self.cols + self.col_idx
            if len(np.unique(keys)) != n:
                raise ValueError("duplicate (row, col) coordinates")
        if not np.isfinite(self.values).all():
            raise ValueError("non-finite sparse values")

    @classmethod
    def from_entries(cls, rows, cols, entries):
        """Build from an iterable of (row, col, value) triples."""
        entries = list(entries)
        if entries:
            r, c, v = zip(*entries)
        else:
            r, c, v = (), (), ()
        return cls(rows, cols, np.array(r, dtype=np.int64),
                   np.array(c, dtype=np.int64), np.array(v, dtype=np.float64))

    @property
    def nnz(self):
        return len(self.values)

    def entries(self):
        """Entries as a list of (row, col, value) triples."""
        return [(int(r), int(c), float(v))
                for r, c, v in zip(self.row_idx, self.col_idx, self.values)]

    def to_dense(self):
        out = np.zeros((self.rows, self.cols))
        out[self.row_idx, self.col_idx] = self.values
        return out

    def transpose(self):
        return SparseMatrix(self.cols, self.rows, self.col_idx, self.row_idx,
                            self.values, _validate=False)

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz})"
