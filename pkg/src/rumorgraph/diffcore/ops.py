"""Differentiable primitives and their derivative rules.

Every operation routes through ``tape.apply_primitive`` so the registry in
``tape.PRIMITIVES`` is the single source of truth for what the kernel
supports; the functions here are thin named wrappers.
"""

import numpy as np

from . import backend
from .sparse import SparseMatrix
from .tape import (NonFiniteValue, PRIMITIVES, ShapeMismatch, Tensor,
                   apply_primitive, constant, primitive)


def _unbroadcast(g, shape):
    """Sum a broadcast gradient back down to the original operand shape."""
    while g.ndim > len(shape):
        g = g.sum(axis=0)
    for i, s in enumerate(shape):
        if s == 1 and g.shape[i] != 1:
            g = g.sum(axis=i, keepdims=True)
    return g


def _sigmoid(z):
    out = np.empty_like(z, dtype=np.float64)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


# elementwise ---------------------------------------------------------------

@primitive("add")
def _add(values, attrs, record):
    a, b = values
    try:
        out = a + b
    except ValueError:
        raise ShapeMismatch(f"add: shapes {a.shape} and {b.shape} do not broadcast")
    return out, lambda g: (_unbroadcast(g, a.shape), _unbroadcast(g, b.shape))


@primitive("sub")
def _sub(values, attrs, record):
    a, b = values
    try:
        out = a - b
    except ValueError:
        raise ShapeMismatch(f"sub: shapes {a.shape} and {b.shape} do not broadcast")
    return out, lambda g: (_unbroadcast(g, a.shape), _unbroadcast(-g, b.shape))


@primitive("mul")
def _mul(values, attrs, record):
    a, b = values
    try:
        out = a * b
    except ValueError:
        raise ShapeMismatch(f"mul: shapes {a.shape} and {b.shape} do not broadcast")
    return out, lambda g: (_unbroadcast(g * b, a.shape), _unbroadcast(g * a, b.shape))


@primitive("scalar_mul")
def _scalar_mul(values, attrs, record):
    (a,) = values
    c = attrs["c"]
    return a * c, lambda g: (g * c,)


@primitive("relu")
def _relu(values, attrs, record):
    (a,) = values
    if record is not None:
        record.relu_inputs.append(a)
    mask = a > 0  # derivative at exactly 0 is 0
    return np.where(mask, a, 0.0), lambda g: (g * mask,)


@primitive("softplus")
def _softplus(values, attrs, record):
    (a,) = values
    return np.logaddexp(0.0, a), lambda g: (g * _sigmoid(a),)


@primitive("exp")
def _exp(values, attrs, record):
    (a,) = values
    with np.errstate(over="ignore"):
        out = np.exp(a)  # overflow surfaces as NonFiniteValue on the output
    return out, lambda g: (g * out,)


@primitive("log")
def _log(values, attrs, record):
    (a,) = values
    if (a <= 0).any():
        raise NonFiniteValue("log: input has non-positive entries")
    return np.log(a), lambda g: (g / a,)


@primitive("normalize_rows")
def _normalize_rows(values, attrs, record):
    (a,) = values
    if a.ndim != 2:
        raise ShapeMismatch(f"normalize_rows: expected 2-D input, got {a.shape}")
    norms = np.sqrt((a * a).sum(axis=1, keepdims=True))
    nonzero = norms > 0
    safe = np.where(nonzero, norms, 1.0)
    out = np.where(nonzero, a / safe, 0.0)

    def vjp(g):
        # rows with zero norm get zero gradient (subgradient convention)
        dot = (g * out).sum(axis=1, keepdims=True)
        return (np.where(nonzero, (g - out * dot) / safe, 0.0),)

    return out, vjp


# linear algebra ------------------------------------------------------------

@primitive("matmul")
def _matmul(values, attrs, record):
    a, b = values
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"matmul: shapes {a.shape} and {b.shape} do not conform")
    return a @ b, lambda g: (g @ b.T, a.T @ g)


@primitive("spmm")
def _spmm(values, attrs, record):
    adj, x = values
    if not isinstance(adj, SparseMatrix):
        raise TypeError("spmm: first input must be a SparseMatrix")
    if x.ndim != 2:
        raise ShapeMismatch(f"spmm: expected 2-D dense input, got {x.shape}")
    flip = attrs.get("transpose", False)
    src, dst = (adj.col_idx, adj.row_idx) if flip else (adj.row_idx, adj.col_idx)
    n_in = adj.cols if flip else adj.rows
    n_out = adj.rows if flip else adj.cols
    if x.shape[0] != n_in:
        raise ShapeMismatch(
            f"spmm: adjacency {adj.rows}x{adj.cols} (transpose={flip}) "
            f"does not conform with dense {x.shape}")
    x = np.ascontiguousarray(x)
    out = backend.spmm_entries(src, dst, adj.values, x, n_out)

    def vjp(g):
        g = np.ascontiguousarray(g)
        return (None, backend.spmm_entries(dst, src, adj.values, g, n_in))

    return out, vjp


@primitive("transpose")
def _transpose(values, attrs, record):
    (a,) = values
    if a.ndim != 2:
        raise ShapeMismatch(f"transpose: expected 2-D input, got {a.shape}")
    return np.ascontiguousarray(a.T), lambda g: (np.ascontiguousarray(g.T),)


@primitive("concat_rows")
def _concat_rows(values, attrs, record):
    widths = {v.shape[1] for v in values if v.ndim == 2}
    if any(v.ndim != 2 for v in values) or len(widths) != 1:
        raise ShapeMismatch(
            f"concat_rows: inputs must be 2-D with equal width, got "
            f"{[v.shape for v in values]}")
    out = np.concatenate(values, axis=0)
    offsets = np.cumsum([0] + [v.shape[0] for v in values])

    def vjp(g):
        return tuple(g[offsets[i]:offsets[i + 1]] for i in range(len(values)))

    return out, vjp


# indexed -------------------------------------------------------------------

@primitive("segment_sum")
def _segment_sum(values, attrs, record):
    (a,) = values
    ids = np.ascontiguousarray(attrs["ids"], dtype=np.int64)
    n_segments = int(attrs["n_segments"])
    if a.ndim != 2 or len(ids) != a.shape[0]:
        raise ShapeMismatch(
            f"segment_sum: input {a.shape} does not match {len(ids)} ids")
    if len(ids) and (ids.min() < 0 or ids.max() >= n_segments):
        raise ValueError("segment_sum: segment id out of range")
    a = np.ascontiguousarray(a)
    out = backend.segment_sum(a, ids, n_segments)
    return out, lambda g: (g[ids],)


@primitive("gather_rows")
def _gather_rows(values, attrs, record):
    (a,) = values
    idx = np.ascontiguousarray(attrs["idx"], dtype=np.int64)
    if a.ndim != 2:
        raise ShapeMismatch(f"gather_rows: expected 2-D input, got {a.shape}")
    if len(idx) and (idx.min() < 0 or idx.max() >= a.shape[0]):
        raise ValueError("gather_rows: index out of range")
    n_in = a.shape[0]

    def vjp(g):
        return (backend.scatter_add_rows(np.ascontiguousarray(g), idx, n_in),)

    return a[idx], vjp


@primitive("reshape")
def _reshape(values, attrs, record):
    (a,) = values
    shape = attrs["shape"]
    try:
        out = a.reshape(shape)
    except ValueError:
        raise ShapeMismatch(f"reshape: cannot view {a.shape} as {shape}")
    return out.copy(), lambda g: (g.reshape(a.shape),)


# reductions ----------------------------------------------------------------

@primitive("sum")
def _sum(values, attrs, record):
    (a,) = values
    axis = attrs.get("axis")
    keepdims = attrs.get("keepdims", False)
    out = a.sum(axis=axis, keepdims=keepdims)

    def vjp(g):
        if axis is None:
            return (np.broadcast_to(g, a.shape).copy(),)
        gg = g if keepdims else np.expand_dims(g, axis)
        return (np.broadcast_to(gg, a.shape).copy(),)

    return out, vjp


# named wrappers ------------------------------------------------------------

def add(a, b):
    return apply_primitive("add", [a, b])


def sub(a, b):
    return apply_primitive("sub", [a, b])


def mul(a, b):
    return apply_primitive("mul", [a, b])


def scalar_mul(a, c):
    return apply_primitive("scalar_mul", [a], c=float(c))


def matmul(a, b):
    return apply_primitive("matmul", [a, b])


def spmm(adj, x, transpose=False):
    """Propagate dense rows along sparse entries: out[c] += v * x[r].

    With entries (r, c, v) this is transpose(A) @ x; ``transpose=True``
    computes A @ x (messages flow against the stored direction).
    """
    return apply_primitive("spmm", [adj, x], transpose=transpose)


def relu(a):
    return apply_primitive("relu", [a])


def softplus(a):
    return apply_primitive("softplus", [a])


def exp(a):
    return apply_primitive("exp", [a])


def log(a):
    return apply_primitive("log", [a])


def normalize_rows(a):
    return apply_primitive("normalize_rows", [a])


def transpose(a):
    return apply_primitive("transpose", [a])


def concat_rows(tensors):
    return apply_primitive("concat_rows", list(tensors))


def segment_sum(a, ids, n_segments):
    return apply_primitive("segment_sum", [a], ids=ids, n_segments=n_segments)


def gather_rows(a, idx):
    return apply_primitive("gather_rows", [a], idx=idx)


def reshape(a, shape):
    return apply_primitive("reshape", [a], shape=tuple(shape))


def tensor_sum(a, axis=None, keepdims=False):
    return apply_primitive("sum", [a], axis=axis, keepdims=keepdims)


def mean(a, axis=None):
    if axis is None:
        n = a.data.size if isinstance(a, Tensor) else np.asarray(a).size
    else:
        n = a.data.shape[axis] if isinstance(a, Tensor) else np.asarray(a).shape[axis]
    return scalar_mul(tensor_sum(a, axis=axis), 1.0 / n)
