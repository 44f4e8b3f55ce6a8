"""Reverse-mode automatic differentiation over float64 numpy arrays.

A ``Record`` is the computation tape for one forward pass: every primitive
executed on tensors attached to it is appended in execution order (which
is a topological order by construction), together with a closure that maps
the output gradient to input gradients. ``backward`` replays the tape once
in reverse.

Tensors not attached to a record are constants; mixing constants and
recorded tensors in one primitive is allowed and only the recorded inputs
receive gradients.
"""

import numpy as np

from .sparse import SparseMatrix


class ShapeMismatch(ValueError):
    pass


class NonFiniteValue(FloatingPointError):
    pass


def _check_finite(arr, where):
    if not np.isfinite(arr).all():
        raise NonFiniteValue(f"non-finite values in {where}")


class Tensor:
    """A float64 array, optionally attached to a Record node."""

    __slots__ = ("data", "record", "node_id")

    def __init__(self, data, record=None, node_id=None):
        self.data = np.asarray(data, dtype=np.float64)
        self.record = record
        self.node_id = node_id

    @property
    def shape(self):
        return self.data.shape

    def item(self):
        return float(self.data)

    def __repr__(self):
        tag = f", node={self.node_id}" if self.record is not None else ""
        return f"Tensor(shape={self.data.shape}{tag})"

    # observers only; graph-building sugar lives in ops and is kept thin
    def __add__(self, other):
        from . import ops

        return ops.add(self, other)

    def __radd__(self, other):
        from . import ops

        return ops.add(other, self)

    def __sub__(self, other):
        from . import ops

        return ops.sub(self, other)

    def __rsub__(self, other):
        from . import ops

        return ops.sub(other, self)

    def __mul__(self, other):
        from . import ops

        if isinstance(other, (int, float)):
            return ops.scalar_mul(self, float(other))
        return ops.mul(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __neg__(self):
        from . import ops

        return ops.scalar_mul(self, -1.0)

    def __truediv__(self, other):
        from . import ops

        if isinstance(other, (int, float)):
            return ops.scalar_mul(self, 1.0 / float(other))
        raise TypeError("tensor/tensor division is not a supported primitive")

    def __matmul__(self, other):
        from . import ops

        return ops.matmul(self, other)


def constant(value):
    """Wrap a value as a constant (record-free) tensor."""
    if isinstance(value, Tensor):
        return value
    arr = np.asarray(value, dtype=np.float64)
    _check_finite(arr, "constant tensor")
    return Tensor(arr)


class _Step:
    __slots__ = ("out_id", "input_ids", "vjp", "name")

    def __init__(self, out_id, input_ids, vjp, name):
        self.out_id = out_id
        self.input_ids = input_ids
        self.vjp = vjp
        self.name = name


class Record:
    """Single-use computation tape; build forward once, traverse back once."""

    def __init__(self):
        self._steps = []
        self._next_id = 0
        self._consumed = False
        self.relu_inputs = []  # forward relu input arrays, for kink detection

    def _new_id(self):
        nid = self._next_id
        self._next_id += 1
        return nid

    def leaf(self, array, name=None):
        """Register a differentiable leaf (a parameter) on this record.

        The data is copied: a leaf owns its values for the lifetime of the
        record (later mutation of the source array must not alter the tape).
        """
        arr = np.array(array, dtype=np.float64)
        _check_finite(arr, name or "leaf tensor")
        return Tensor(arr, record=self, node_id=self._new_id())

    def register(self, out, input_ids, vjp, name):
        step = _Step(self._new_id(), input_ids, vjp, name)
        self._steps.append(step)
        return Tensor(out, record=self, node_id=step.out_id)

    def __len__(self):
        return len(self._steps)


class Gradients:
    """Gradient map from backward(); zeros for non-participating leaves."""

    def __init__(self, by_id):
        self._by_id = by_id

    def get(self, tensor):
        if tensor.node_id is not None and tensor.node_id in self._by_id:
            return self._by_id[tensor.node_id]
        return np.zeros_like(tensor.data)

    def __getitem__(self, tensor):
        return self.get(tensor)

    def by_node_id(self):
        return dict(self._by_id)

    def __len__(self):
        return len(self._by_id)


def backward(loss, record=None):
    """Reverse traversal from a scalar loss; returns a Gradients map."""
    if not isinstance(loss, Tensor) or loss.record is None:
        raise ValueError("loss must be a tensor attached to a record")
    rec = record if record is not None else loss.record
    if loss.record is not rec:
        raise ValueError("loss does not belong to the given record")
    if loss.data.size != 1:
        raise ShapeMismatch(f"loss must be scalar, got shape {loss.data.shape}")
    if rec._consumed:
        raise RuntimeError("record already traversed backward")
    rec._consumed = True

    grads = {loss.node_id: np.ones_like(loss.data)}
    for step in reversed(rec._steps):
        g = grads.pop(step.out_id, None)
        if g is None:
            continue
        for in_id, in_grad in zip(step.input_ids, step.vjp(g)):
            if in_id is None or in_grad is None:
                continue
            acc = grads.get(in_id)
            if acc is None:
                grads[in_id] = in_grad
            else:
                acc += in_grad
    return Gradients(grads)


# primitive registry -------------------------------------------------------

PRIMITIVES = {}


def primitive(name):
    def deco(fn):
        PRIMITIVES[name] = fn
        return fn

    return deco


def apply_primitive(kind, inputs, **attrs):
    """Execute a registered primitive on Tensor/SparseMatrix inputs.

    The output is registered on the (single) record of the recorded inputs
    with a derivative rule for every differentiable input; with no recorded
    input the result is a constant tensor.
    """
    fn = PRIMITIVES.get(kind)
    if fn is None:
        raise KeyError(f"unknown primitive kind: {kind!r}")

    record = None
    for t in inputs:
        if isinstance(t, Tensor) and t.record is not None:
            if record is None:
                record = t.record
            elif record is not t.record:
                raise ValueError("inputs belong to different records")

    values = []
    for t in inputs:
        if isinstance(t, SparseMatrix):
            values.append(t)
        elif isinstance(t, Tensor):
            values.append(t.data)
        else:
            values.append(constant(t).data)

    out, vjp = fn(values, attrs, record)
    _check_finite(out, f"output of primitive {kind!r}")

    if record is None:
        return Tensor(out)
    input_ids = [t.node_id if isinstance(t, Tensor) else None for t in inputs]
    return record.register(out, input_ids, vjp, kind)
