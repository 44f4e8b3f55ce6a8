"""Pure-numpy implementations of the hot kernels.

Used as the fallback backend when the compiled extension is unavailable
(or when RUMORGRAPH_FORCE_NUMPY is set). Semantics must match
``_kernels.pyx`` exactly; the equivalence is covered by tests and the
kernel benchmark.
"""

import numpy as np


def spmm_entries(src, dst, val, dense, n_out):
    """Accumulate out[dst[k]] += val[k] * dense[src[k]] over all entries."""
    out = np.zeros((n_out, dense.shape[1]), dtype=np.float64)
    np.add.at(out, dst, val[:, None] * dense[src])
    return out


def segment_sum(x, ids, n_segments):
    """Sum rows of x into n_segments groups given per-row group ids."""
    out = np.zeros((n_segments, x.shape[1]), dtype=np.float64)
    np.add.at(out, ids, x)
    return out


def scatter_add_rows(g, idx, n_out):
    """Accumulate out[idx[k]] += g[k]; adjoint of a row gather."""
    out = np.zeros((n_out, g.shape[1]), dtype=np.float64)
    np.add.at(out, idx, g)
    return out
