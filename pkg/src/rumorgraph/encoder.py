"""Three-layer GCN over batched propagation trees.

Node representations come from three relu(propagate(H) @ W) layers on the
normalized adjacency; graph representations are sum-pooled per graph, the
root representation is the node row at each graph's source post, and
class logits come from a linear head on the graph representation.
"""

import math
from dataclasses import dataclass

import numpy as np

from .diffcore import Tensor, constant, ops


def glorot(rng, fan_in, fan_out):
    bound = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, (fan_in, fan_out))


@dataclass
class EncoderParams:
    """Layer weights plus the classifier head."""

    w1: np.ndarray
    w2: np.ndarray
    w3: np.ndarray
    wc: np.ndarray
    bc: np.ndarray

    @classmethod
    def init(cls, d_x, d_h, n_classes, rng):
        return cls(
            w1=glorot(rng, d_x, d_h),
            w2=glorot(rng, d_h, d_h),
            w3=glorot(rng, d_h, d_h),
            wc=glorot(rng, d_h, n_classes),
            bc=np.zeros(n_classes),
        )

    def arrays(self):
        return {"w1": self.w1, "w2": self.w2, "w3": self.w3,
                "wc": self.wc, "bc": self.bc}

    @property
    def d_x(self):
        return self.w1.shape[0]

    @property
    def d_h(self):
        return self.w1.shape[1]

    @property
    def n_classes(self):
        return self.wc.shape[1]


@dataclass
class EncoderOutput:
    node_reps: Tensor   # sum(V_i) x d_h
    root_reps: Tensor   # B x d_h
    graph_reps: Tensor  # B x d_h
    logits: Tensor      # B x C


def _as_tensor_map(params):
    if isinstance(params, EncoderParams):
        return {k: constant(v) for k, v in params.arrays().items()}
    return params


def gcn_forward(batch, params):
    """Forward pass over a batch; ``params`` may be EncoderParams (constant,
    inference) or a name->Tensor mapping of record leaves (training)."""
    pt = _as_tensor_map(params)
    h = constant(batch.features)
    for key in ("w1", "w2", "w3"):
        h = ops.relu(ops.spmm(batch.adjacency, ops.matmul(h, pt[key])))
    graph_reps = ops.segment_sum(h, batch.graph_ids, batch.n_graphs)
    root_reps = ops.gather_rows(h, batch.root_indices)
    logits = ops.add(ops.matmul(graph_reps, pt["wc"]), pt["bc"])
    return EncoderOutput(node_reps=h, root_reps=root_reps,
                         graph_reps=graph_reps, logits=logits)


def receptive_field_depth(direction, layers):
    """Maximum node depth whose features can influence the root representation.

    With bottom-up (or undirected) edges and L propagation layers, nodes up
    to L edges below the root reach it; with top-down edges information
    only flows away from the root, so no reply can influence it.
    """
    if layers < 1:
        raise ValueError(f"layer count must be >= 1, got {layers}")
    if direction in ("bottom-up", "undirected"):
        return layers
    if direction == "top-down":
        return 0
    raise ValueError(f"unknown direction {direction!r}")
