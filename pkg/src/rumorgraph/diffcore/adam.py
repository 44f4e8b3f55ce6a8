"""Adam optimizer with bias correction, operating on named parameter dicts."""

import numpy as np


class AdamState:
    """First/second moment accumulators plus the shared step counter."""

    def __init__(self, params):
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self.t = 0

    def check_congruent(self, params):
        for k, p in params.items():
            if k not in self.m:
                raise KeyError(f"adam state has no slot for parameter {k!r}")
            if self.m[k].shape != p.shape:
                raise ValueError(
                    f"adam slot {k!r} has shape {self.m[k].shape}, "
                    f"parameter has {p.shape}")


def adam_step(params, grads, state, lr=1e-3, beta1=0.9, beta2=0.999, eps=1e-8):
    """One bias-corrected Adam update, in place. Returns (params, state).

    ``params`` and ``grads`` are dicts of name -> float64 array with
    congruent shapes; every parameter must have a gradient entry (zero
    gradients for non-participating parameters are fine and leave them
    unchanged on a fresh state).
    """
    if lr <= 0:
        raise ValueError(f"learning rate must be positive, got {lr}")
    state.check_congruent(params)
    state.t += 1
    bc1 = 1.0 - beta1 ** state.t
    bc2 = 1.0 - beta2 ** state.t
    for k, p in params.items():
        g = grads[k]
        if g.shape != p.shape:
            raise ValueError(
                f"gradient for {k!r} has shape {g.shape}, parameter has {p.shape}")
        m = state.m[k]
        v = state.v[k]
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * (g * g)
        p -= lr * (m / bc1) / (np.sqrt(v / bc2) + eps)
    return params, state
