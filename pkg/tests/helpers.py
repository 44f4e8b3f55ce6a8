"""Shared test utilities: random gradcheck instances for every primitive."""

import numpy as np

from rumorgraph.diffcore import SparseMatrix, ops


def random_sparse(rng, n, density=2.0):
    """Random square sparse matrix with ~density*n unique entries."""
    want = max(1, int(density * n))
    coords = set()
    while len(coords) < min(want, n * n):
        coords.add((int(rng.integers(n)), int(rng.integers(n))))
    entries = [(r, c, float(rng.uniform(0.2, 1.5))) for r, c in coords]
    return SparseMatrix.from_entries(n, n, entries)


def _scalarize(op_out, weights):
    return ops.tensor_sum(ops.mul(op_out, weights))


def primitive_gradcheck_cases(rng):
    """Yield (kind, loss_builder, params) for every registered primitive.

    Each builder reduces the primitive output to a scalar through a fixed
    random weighting so every output entry contributes to the loss.
    """
    m, k, n = (int(rng.integers(2, 5)) for _ in range(3))

    def w_for(shape):
        return rng.standard_normal(shape)

    cases = []

    a = rng.standard_normal((m, n))
    b = rng.standard_normal((m, n))
    row = rng.standard_normal((n,))
    for kind in ("add", "sub", "mul"):
        w = w_for((m, n))
        cases.append((kind, lambda ts, kind=kind, w=w: _scalarize(
            ops.apply_primitive(kind, ts), w), [a, b]))
        w2 = w_for((m, n))
        cases.append((kind + "_broadcast", lambda ts, kind=kind, w=w2: _scalarize(
            ops.apply_primitive(kind, ts), w), [a, row]))

    c = float(rng.uniform(-2, 2))
    w = w_for((m, n))
    cases.append(("scalar_mul", lambda ts, w=w, c=c: _scalarize(
        ops.scalar_mul(ts[0], c), w), [a]))

    lhs = rng.standard_normal((m, k))
    rhs = rng.standard_normal((k, n))
    w = w_for((m, n))
    cases.append(("matmul", lambda ts, w=w: _scalarize(
        ops.matmul(ts[0], ts[1]), w), [lhs, rhs]))

    size = int(rng.integers(3, 7))
    adj = random_sparse(rng, size)
    dense = rng.standard_normal((size, k))
    w = w_for((size, k))
    cases.append(("spmm", lambda ts, adj=adj, w=w: _scalarize(
        ops.spmm(adj, ts[0]), w), [dense]))
    w = w_for((size, k))
    cases.append(("spmm_transpose", lambda ts, adj=adj, w=w: _scalarize(
        ops.spmm(adj, ts[0], transpose=True), w), [dense]))

    x = rng.standard_normal((m, n)) * 1.5
    w = w_for((m, n))
    cases.append(("relu", lambda ts, w=w: _scalarize(ops.relu(ts[0]), w), [x]))
    cases.append(("softplus", lambda ts, w=w_for((m, n)): _scalarize(
        ops.softplus(ts[0]), w), [rng.uniform(-3, 3, (m, n))]))
    cases.append(("exp", lambda ts, w=w_for((m, n)): _scalarize(
        ops.exp(ts[0]), w), [rng.uniform(-2, 2, (m, n))]))
    cases.append(("log", lambda ts, w=w_for((m, n)): _scalarize(
        ops.log(ts[0]), w), [rng.uniform(0.3, 3, (m, n))]))

    signs = rng.choice([-1.0, 1.0], size=(m, n))
    safe_rows = rng.uniform(0.5, 1.5, (m, n)) * signs
    w = w_for((m, n))
    cases.append(("normalize_rows", lambda ts, w=w: _scalarize(
        ops.normalize_rows(ts[0]), w), [safe_rows]))

    w = w_for((n, m))
    cases.append(("transpose", lambda ts, w=w: _scalarize(
        ops.transpose(ts[0]), w), [a]))

    blocks = [rng.standard_normal((int(rng.integers(1, 4)), n)) for _ in range(3)]
    total_rows = sum(b.shape[0] for b in blocks)
    w = w_for((total_rows, n))
    cases.append(("concat_rows", lambda ts, w=w: _scalarize(
        ops.concat_rows(ts), w), blocks))

    rows = int(rng.integers(3, 8))
    n_seg = int(rng.integers(1, 4))
    ids = np.sort(rng.integers(0, n_seg, rows))
    ids[0] = 0
    seg_x = rng.standard_normal((rows, k))
    w = w_for((n_seg, k))
    cases.append(("segment_sum", lambda ts, ids=ids, n_seg=n_seg, w=w: _scalarize(
        ops.segment_sum(ts[0], ids, n_seg), w), [seg_x]))

    idx = rng.integers(0, rows, int(rng.integers(1, 6)))
    w = w_for((len(idx), k))
    cases.append(("gather_rows", lambda ts, idx=idx, w=w: _scalarize(
        ops.gather_rows(ts[0], idx), w), [seg_x]))

    for axis, keepdims in ((None, False), (0, False), (1, True)):
        arr = rng.standard_normal((m, n))
        probe = np.ones((m, n)).sum(axis=axis, keepdims=keepdims)
        w = w_for(np.shape(probe))
        cases.append((f"sum_axis{axis}", lambda ts, axis=axis, kd=keepdims, w=w:
                      _scalarize(ops.tensor_sum(ts[0], axis=axis, keepdims=kd), w),
                      [arr]))

    return cases
