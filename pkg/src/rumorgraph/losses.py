"""Training losses.

Three objectives share the batch convention of integer labels with -1 for
unlabeled claims and index 0 for the non-rumor class:

* supervised contrastive loss anchored exclusively on labeled rumor-class
  graphs: positives are same-label labeled graphs, negatives are every
  other graph (differently-labeled plus all unlabeled, the latter treated
  as non-rumors); non-rumor graphs never form positive pairs.
* a mutual-information objective between node representations and their
  own graph's root representation on unlabeled graphs, with negatives
  drawn from the other unlabeled graphs of the batch (selectable JS / KL /
  DV estimator).
* cross-entropy over class logits of labeled graphs.
"""

from dataclasses import dataclass, field

import numpy as np

from .diffcore import Tensor, constant, ops
from .encoder import glorot

MI_KINDS = ("JS", "KL", "DV")
_BIG = 1e9


@dataclass(frozen=True)
class ContrastConfig:
    """Contrastive-loss knobs.

    The default form multiplies cosine similarity by the temperature and
    takes a single log of the averaged positive/negative ratio. The
    ``standard_form`` switch selects the conventional formulation instead
    (divide by temperature, per-positive log mean, every labeled class
    anchors and forms positives) for ablation comparisons.
    """

    temperature: float = 0.3
    standard_form: bool = False

    def __post_init__(self):
        if self.temperature <= 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")


@dataclass
class DiscriminatorParams:
    """Two linear projectors scoring (node, root) pairs by dot product."""

    p_local: np.ndarray
    p_global: np.ndarray

    @classmethod
    def init(cls, d_h, d_p=None, rng=None):
        d_p = d_p or d_h
        rng = rng if rng is not None else np.random.default_rng(0)
        return cls(p_local=glorot(rng, d_h, d_p), p_global=glorot(rng, d_h, d_p))

    def arrays(self):
        return {"p_local": self.p_local, "p_global": self.p_global}


@dataclass
class LossDiagnostics:
    """Optional instrumentation filled in by the loss functions."""

    n_anchors: int = 0
    skipped_anchors: int = 0
    zero_norm_rows: int = 0
    degenerate_unlabeled_batch: bool = False
    positive_pairs: list = field(default_factory=list)  # (anchor, positive)


def _zero():
    return constant(np.zeros(()))


def supervised_contrastive_loss(graph_reps, labels, unlabeled_mask, cfg=None,
                                diag=None):
    """Rumor-anchored contrastive loss over one batch of graph representations.

    ``labels`` holds class indices (0 = non-rumor) with -1 for unlabeled
    graphs. Anchors are labeled graphs with label > 0; an anchor's
    positives are the other labeled graphs with exactly the same label and
    its negatives are all remaining graphs. Anchors without any positive
    (or any negative) are skipped; with no usable anchor the loss is 0
    with zero gradient.
    """
    cfg = cfg or ContrastConfig()
    labels = np.asarray(labels, dtype=np.int64)
    unlabeled = np.asarray(unlabeled_mask, dtype=bool)
    n = len(labels)
    if n == 0:
        raise ValueError("empty batch")
    if ((labels < 0) != unlabeled).any():
        raise ValueError("labels and unlabeled mask disagree")

    if diag is not None:
        norms = np.linalg.norm(np.asarray(graph_reps.data), axis=1)
        diag.zero_norm_rows += int((norms == 0).sum())

    labeled = ~unlabeled
    anchor_candidates = np.where(labels > 0)[0] if not cfg.standard_form \
        else np.where(labeled)[0]

    anchors, pos_masks, neg_masks, pos_counts = [], [], [], []
    for a in anchor_candidates:
        same = labeled & (labels == labels[a])
        same[a] = False
        positives = np.where(same)[0]
        if cfg.standard_form:
            negatives = np.ones(n, dtype=bool)
            negatives[a] = False
        else:
            negatives = ~same
            negatives[a] = False
        if len(positives) == 0 or not negatives.any():
            if diag is not None:
                diag.skipped_anchors += 1
            continue
        anchors.append(a)
        pos_masks.append(same.astype(np.float64))
        neg_masks.append(negatives.astype(np.float64))
        pos_counts.append(float(len(positives)))
        if diag is not None:
            diag.positive_pairs.extend((int(a), int(p)) for p in positives)
    if diag is not None:
        diag.n_anchors += len(anchors)
    if not anchors:
        return _zero()

    anchor_idx = np.array(anchors, dtype=np.int64)
    pos_mask = np.stack(pos_masks)
    neg_mask = np.stack(neg_masks)
    pos_count = np.array(pos_counts)

    normalized = ops.normalize_rows(graph_reps)
    sims = ops.matmul(normalized, ops.transpose(normalized))
    if cfg.standard_form:
        logits = ops.scalar_mul(sims, 1.0 / cfg.temperature)
        rows = ops.gather_rows(logits, anchor_idx)
        # per-anchor log-sum-exp over everything but the anchor itself
        shift = np.where(neg_mask > 0, rows.data, -np.inf).max(axis=1, keepdims=True)
        masked = ops.sub(ops.mul(rows, neg_mask), _BIG * (1.0 - neg_mask))
        lse = ops.add(ops.log(ops.tensor_sum(ops.exp(ops.sub(masked, shift)),
                                             axis=1, keepdims=True)), shift)
        mean_pos = ops.mul(ops.tensor_sum(ops.mul(rows, pos_mask), axis=1,
                                          keepdims=True),
                           (1.0 / pos_count)[:, None])
        terms = ops.sub(lse, mean_pos)
    else:
        scaled = ops.exp(ops.scalar_mul(sims, cfg.temperature))
        rows = ops.gather_rows(scaled, anchor_idx)
        pos_sum = ops.tensor_sum(ops.mul(rows, pos_mask), axis=1)
        neg_sum = ops.tensor_sum(ops.mul(rows, neg_mask), axis=1)
        terms = ops.add(ops.sub(ops.log(neg_sum), ops.log(pos_sum)),
                        np.log(pos_count))
    return ops.mean(terms)


def _as_row(value):
    t = value if isinstance(value, Tensor) else constant(value)
    if t.data.ndim == 1:
        return ops.reshape(t, (1, t.data.shape[0]))
    if t.data.ndim == 2 and t.data.shape[0] == 1:
        return t
    raise ValueError(f"expected a single representation vector, got shape {t.data.shape}")


def _disc_tensors(params):
    """Projector tensors from DiscriminatorParams (constant) or a leaf map."""
    if isinstance(params, DiscriminatorParams):
        return constant(params.p_local), constant(params.p_global)
    return params["p_local"], params["p_global"]


def discriminator_score(node_rep, root_rep, params):
    """Projected dot-product score (x @ P_local) . (y @ P_global)."""
    x = _as_row(node_rep)
    y = _as_row(root_rep)
    p_local, p_global = _disc_tensors(params)
    return ops.tensor_sum(ops.mul(ops.matmul(x, p_local),
                                  ops.matmul(y, p_global)))


def mi_objective(pos_scores, neg_scores, kind="JS"):
    """Variational mutual-information lower bound from score lists.

    JS:  mean(-sp(-t+)) - mean(sp(t-))
    DV:  mean(t+) - log(mean(exp(t-)))
    KL:  mean(t+) - mean(exp(t- - 1))
    """
    if kind not in MI_KINDS:
        raise ValueError(f"MI estimator must be one of {MI_KINDS}, got {kind!r}")
    tp = pos_scores if isinstance(pos_scores, Tensor) else constant(np.atleast_1d(pos_scores))
    tn = neg_scores if isinstance(neg_scores, Tensor) else constant(np.atleast_1d(neg_scores))
    if tp.data.size == 0 or tn.data.size == 0:
        raise ValueError("mi_objective needs non-empty positive and negative scores")
    if kind == "JS":
        pos_term = ops.mean(ops.scalar_mul(ops.softplus(ops.scalar_mul(tp, -1.0)), -1.0))
        return ops.sub(pos_term, ops.mean(ops.softplus(tn)))
    if kind == "DV":
        shift = float(tn.data.max())
        lse = ops.add(ops.log(ops.tensor_sum(ops.exp(ops.sub(tn, shift)))), shift)
        log_mean = ops.sub(lse, float(np.log(tn.data.size)))
        return ops.sub(ops.mean(tp), log_mean)
    shift = float(tn.data.max())
    mean_shifted = ops.mean(ops.exp(ops.sub(tn, shift)))
    return ops.sub(ops.mean(tp), ops.scalar_mul(mean_shifted, float(np.exp(shift - 1.0))))


def unsupervised_contrastive_loss(node_reps, global_reps, graph_ids,
                                  unlabeled_mask, params, kind="JS", diag=None):
    """Root-anchored MI maximization over the batch's unlabeled graphs.

    For each unlabeled graph, positives pair its own nodes with its global
    (root) representation and negatives pair it with the nodes of every
    other unlabeled graph; the per-graph MI estimate is summed once per
    node and averaged over graphs, negated so minimizing maximizes MI.
    Batches with fewer than two unlabeled graphs contribute 0 (flagged).
    """
    unlabeled = np.asarray(unlabeled_mask, dtype=bool)
    graph_ids = np.asarray(graph_ids, dtype=np.int64)
    u_graphs = np.where(unlabeled)[0]
    if len(u_graphs) < 2:
        if diag is not None:
            diag.degenerate_unlabeled_batch = True
        return _zero()

    node_sel = np.where(np.isin(graph_ids, u_graphs))[0]
    col_of = {int(g): j for j, g in enumerate(u_graphs)}
    node_col = np.array([col_of[int(g)] for g in graph_ids[node_sel]])
    n_nodes, n_graphs = len(node_sel), len(u_graphs)

    p_local, p_global = _disc_tensors(params)
    local = ops.matmul(ops.gather_rows(node_reps, node_sel), p_local)
    glob = ops.matmul(ops.gather_rows(global_reps, u_graphs), p_global)
    scores = ops.matmul(local, ops.transpose(glob))  # n_nodes x n_graphs

    pos_mask = np.zeros((n_nodes, n_graphs))
    pos_mask[np.arange(n_nodes), node_col] = 1.0
    neg_mask = 1.0 - pos_mask
    counts = pos_mask.sum(axis=0)
    neg_counts = n_nodes - counts

    if kind == "JS":
        pos_vals = ops.scalar_mul(ops.softplus(ops.scalar_mul(scores, -1.0)), -1.0)
        neg_vals = ops.softplus(scores)
        pos_mean = ops.mul(ops.tensor_sum(ops.mul(pos_vals, pos_mask), axis=0),
                           1.0 / counts)
        neg_mean = ops.mul(ops.tensor_sum(ops.mul(neg_vals, neg_mask), axis=0),
                           1.0 / neg_counts)
        estimate = ops.sub(pos_mean, neg_mean)
    elif kind in ("DV", "KL"):
        pos_mean = ops.mul(ops.tensor_sum(ops.mul(scores, pos_mask), axis=0),
                           1.0 / counts)
        masked = ops.sub(ops.mul(scores, neg_mask), _BIG * pos_mask)
        shift = np.where(neg_mask > 0, scores.data, -np.inf).max(axis=0)
        exp_shifted = ops.exp(ops.sub(masked, shift))
        if kind == "DV":
            lse = ops.add(ops.log(ops.tensor_sum(exp_shifted, axis=0)), shift)
            estimate = ops.sub(pos_mean, ops.sub(lse, np.log(neg_counts)))
        else:
            mean_exp = ops.mul(ops.tensor_sum(exp_shifted, axis=0),
                               np.exp(shift - 1.0) / neg_counts)
            estimate = ops.sub(pos_mean, mean_exp)
    else:
        raise ValueError(f"MI estimator must be one of {MI_KINDS}, got {kind!r}")

    total = ops.tensor_sum(ops.mul(estimate, counts))
    return ops.scalar_mul(total, -1.0 / n_graphs)


def cross_entropy_loss(logits, labels):
    """Mean negative log-softmax of the true class; labels must be >= 0."""
    labels = np.asarray(labels, dtype=np.int64)
    if logits.data.shape[0] != len(labels):
        raise ValueError(
            f"{logits.data.shape[0]} logit rows vs {len(labels)} labels")
    if len(labels) == 0:
        raise ValueError("empty batch")
    if (labels < 0).any():
        raise ValueError("cross-entropy scored an unlabeled graph")
    n, c = logits.data.shape
    if (labels >= c).any():
        raise ValueError("label index out of range")
    shift = logits.data.max(axis=1, keepdims=True)
    lse = ops.add(ops.log(ops.tensor_sum(ops.exp(ops.sub(logits, shift)),
                                         axis=1, keepdims=True)), shift)
    onehot = np.zeros((n, c))
    onehot[np.arange(n), labels] = 1.0
    true_logit = ops.tensor_sum(ops.mul(logits, onehot), axis=1, keepdims=True)
    return ops.mean(ops.sub(lse, true_logit))
