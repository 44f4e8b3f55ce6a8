"""Block-diagonal batching of claims for the encoder."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..diffcore import SparseMatrix
from .graph import build_adjacency, gcn_normalize
from .text import featurize
from .types import BINARY_CLASSES, FOUR_CLASSES


def infer_classes(claims):
    labels = {c.label for c in claims if c.label is not None}
    if labels & {"F", "T", "U"}:
        return FOUR_CLASSES
    return BINARY_CLASSES


@dataclass(frozen=True)
class PreparedClaim:
    """Per-claim tensors, computed once and reused across batches."""

    claim_id: str
    features: np.ndarray       # |V| x d_x
    adjacency: SparseMatrix    # gcn-normalized, |V| x |V|
    label_index: int           # -1 when unlabeled
    n_nodes: int
    root_offset: int = 0       # position of the source post within the claim


@dataclass(frozen=True)
class Batch:
    """Block-diagonal bundle of claims.

    graph_ids are contiguous 0..B-1 in node order; root_indices point at
    each claim's source post row; labels holds class indices with -1 for
    unlabeled claims, mirrored by unlabeled_mask.
    """

    features: np.ndarray
    adjacency: SparseMatrix
    graph_ids: np.ndarray
    root_indices: np.ndarray
    labels: np.ndarray
    unlabeled_mask: np.ndarray
    classes: tuple

    @property
    def n_graphs(self):
        return len(self.root_indices)

    @property
    def n_nodes(self):
        return self.features.shape[0]


def prepare_claim(claim, featurizer, direction="bottom-up", classes=None):
    classes = classes or infer_classes([claim])
    if claim.label is not None and claim.label not in classes:
        raise ValueError(f"label {claim.label!r} not in class set {classes}")
    label_index = classes.index(claim.label) if claim.label is not None else -1
    return PreparedClaim(
        claim_id=claim.claim_id,
        features=featurize(claim.tree, featurizer),
        adjacency=gcn_normalize(build_adjacency(claim.tree, direction)),
        label_index=label_index,
        n_nodes=len(claim.tree.posts),
        root_offset=claim.tree.root_index,
    )


def assemble_batch(prepared, classes):
    if not prepared:
        raise ValueError("cannot assemble an empty batch")
    offsets = np.cumsum([0] + [p.n_nodes for p in prepared])
    total = int(offsets[-1])
    features = np.concatenate([p.features for p in prepared], axis=0)
    row_idx = np.concatenate(
        [p.adjacency.row_idx + off for p, off in zip(prepared, offsets)])
    col_idx = np.concatenate(
        [p.adjacency.col_idx + off for p, off in zip(prepared, offsets)])
    values = np.concatenate([p.adjacency.values for p in prepared])
    graph_ids = np.concatenate(
        [np.full(p.n_nodes, g, dtype=np.int64) for g, p in enumerate(prepared)])
    root_indices = np.array(
        [off + p.root_offset for p, off in zip(prepared, offsets)], dtype=np.int64)
    labels = np.array([p.label_index for p in prepared], dtype=np.int64)
    return Batch(
        features=features,
        adjacency=SparseMatrix(total, total, row_idx, col_idx, values,
                               _validate=False),
        graph_ids=graph_ids,
        root_indices=root_indices,
        labels=labels,
        unlabeled_mask=labels < 0,
        classes=tuple(classes),
    )


def make_batch(claims, featurizer, direction="bottom-up",
               classes: Optional[tuple] = None):
    """Featurize, normalize and block-diagonally assemble a list of claims."""
    claims = list(claims)
    if not claims:
        raise ValueError("cannot batch an empty claim list")
    classes = tuple(classes) if classes else infer_classes(claims)
    prepared = [prepare_claim(c, featurizer, direction, classes) for c in claims]
    return assemble_batch(prepared, classes)
