"""Central finite-difference verification of analytic gradients."""

import warnings

import numpy as np

from .tape import Record, backward


def _evaluate(loss_builder, arrays):
    """Run the builder on fresh leaves; return (loss value, relu inputs)."""
    rec = Record()
    leaves = [rec.leaf(a) for a in arrays]
    loss = loss_builder(leaves)
    if loss.data.size != 1:
        raise ValueError("loss builder must return a scalar tensor")
    return float(loss.data), rec.relu_inputs


def _crosses_kink(relu_a, relu_b):
    """True when any relu input changed sign between the two evaluations."""
    if len(relu_a) != len(relu_b):
        return True  # control flow changed; treat as nondifferentiable here
    for za, zb in zip(relu_a, relu_b):
        if za.shape != zb.shape or ((za > 0) != (zb > 0)).any():
            return True
    return False


def finite_difference_check(loss_builder, params, eps=1e-5):
    """Max relative error between analytic and central-difference gradients.

    ``loss_builder`` takes a list of leaf tensors (one per entry of
    ``params``) and returns a scalar loss on their record; it must be
    deterministic. Entries whose +/-eps perturbation crosses a relu kink
    are skipped with a RuntimeWarning. The error for each entry is
    |analytic - numeric| / max(1, |analytic|, |numeric|).
    """
    if eps <= 0:
        raise ValueError(f"step size must be positive, got {eps}")
    arrays = [np.array(p, dtype=np.float64) for p in params]

    base, _ = _evaluate(loss_builder, arrays)
    repeat, _ = _evaluate(loss_builder, arrays)
    if base != repeat:
        raise ValueError("loss builder is not deterministic "
                         f"({base!r} != {repeat!r} on identical inputs)")

    rec = Record()
    leaves = [rec.leaf(a) for a in arrays]
    loss = loss_builder(leaves)
    grads = backward(loss)
    analytic = [grads.get(t) for t in leaves]

    max_rel = 0.0
    skipped = 0
    for pi, arr in enumerate(arrays):
        flat = arr.ravel()
        a_flat = analytic[pi].ravel()
        for e in range(flat.size):
            orig = flat[e]
            flat[e] = orig + eps
            f_plus, relu_plus = _evaluate(loss_builder, arrays)
            flat[e] = orig - eps
            f_minus, relu_minus = _evaluate(loss_builder, arrays)
            flat[e] = orig
            if _crosses_kink(relu_plus, relu_minus):
                skipped += 1
                continue
            numeric = (f_plus - f_minus) / (2.0 * eps)
            rel = abs(a_flat[e] - numeric) / max(1.0, abs(a_flat[e]), abs(numeric))
            max_rel = max(max_rel, rel)
    if skipped:
        warnings.warn(f"finite_difference_check: skipped {skipped} entr"
                      f"{'y' if skipped == 1 else 'ies'} at relu kinks",
                      RuntimeWarning, stacklevel=2)
    return max_rel
