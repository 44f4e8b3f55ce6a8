"""Adjacency construction and GCN normalization.

Adjacency entries are stored as (from, to, weight); message passing flows
along stored entries (see diffcore.ops.spmm). Bottom-up orientation stores
child -> parent edges, so with L propagation layers the root aggregates
every node within L edges of it.
"""

import numpy as np

from ..diffcore import SparseMatrix

DIRECTIONS = ("bottom-up", "top-down", "undirected")


def build_adjacency(tree, direction="bottom-up"):
    if direction not in DIRECTIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    entries = []
    for parent, child in tree.edges:
        if direction in ("bottom-up", "undirected"):
            entries.append((child, parent, 1.0))
        if direction in ("top-down", "undirected"):
            entries.append((parent, child, 1.0))
    n = len(tree.posts)
    return SparseMatrix.from_entries(n, n, entries)


def gcn_normalize(adj):
    """Self-loop + symmetric degree normalization of a square matrix.

    Adds the identity, then scales entry (r, c) by 1/sqrt(d_r * d_c) where
    d is the row sum after the self-loops. Symmetric in, symmetric out.
    """
    if adj.rows != adj.cols:
        raise ValueError(f"matrix must be square, got {adj.rows}x{adj.cols}")
    n = adj.rows
    rows = np.concatenate([adj.row_idx, np.arange(n, dtype=np.int64)])
    cols = np.concatenate([adj.col_idx, np.arange(n, dtype=np.int64)])
    vals = np.concatenate([adj.values, np.ones(n)])
    keys = rows * n + cols
    uniq, inverse = np.unique(keys, return_inverse=True)
    merged = np.zeros(len(uniq))
    np.add.at(merged, inverse, vals)
    r = (uniq // n).astype(np.int64)
    c = (uniq % n).astype(np.int64)
    degree = np.zeros(n)
    np.add.at(degree, r, merged)
    normalized = merged / np.sqrt(degree[r] * degree[c])
    return SparseMatrix(n, n, r, c, normalized, _validate=False)
