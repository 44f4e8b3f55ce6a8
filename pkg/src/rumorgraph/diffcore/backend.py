"""Kernel backend selection: compiled extension if importable, numpy otherwise.

Set RUMORGRAPH_FORCE_NUMPY=1 to force the fallback (used by the kernel
benchmark and the backend-equivalence tests).
"""

import os

if os.environ.get("RUMORGRAPH_FORCE_NUMPY"):
    from . import _kernels_np as kernels

    BACKEND = "numpy"
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_np as kernels

        BACKEND = "numpy"

spmm_entries = kernels.spmm_entries
segment_sum = kernels.segment_sum
scatter_add_rows = kernels.scatter_add_rows
