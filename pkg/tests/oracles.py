"""Independent scalar-loop oracles for the loss functions.

These deliberately avoid the package's tape/vectorized code paths: plain
Python floats, explicit pair enumeration, textbook formulas.
"""

import math

import numpy as np


def cosine(u, v):
    nu, nv = math.sqrt(float(u @ u)), math.sqrt(float(v @ v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(u @ v) / (nu * nv)


def supervised_contrastive_oracle(reps, labels, unlabeled, tau):
    """Literal positive/negative enumeration of the rumor-anchored loss."""
    reps = np.asarray(reps, dtype=float)
    n = len(labels)
    terms = []
    for a in range(n):
        if unlabeled[a] or labels[a] <= 0:
            continue
        positives = [j for j in range(n)
                     if j != a and not unlabeled[j] and labels[j] == labels[a]]
        negatives = [j for j in range(n)
                     if j != a and (unlabeled[j] or labels[j] != labels[a])]
        if not positives or not negatives:
            continue
        pos = sum(math.exp(cosine(reps[a], reps[p]) * tau) for p in positives)
        neg = sum(math.exp(cosine(reps[a], reps[q]) * tau) for q in negatives)
        terms.append(-math.log((pos / len(positives)) / neg))
    return sum(terms) / len(terms) if terms else 0.0


def mi_oracle(pos, neg, kind):
    pos = [float(t) for t in pos]
    neg = [float(t) for t in neg]
    if kind == "JS":
        return (sum(-math.log1p(math.exp(-t)) if t > -30 else t for t in pos) / len(pos)
                - sum(math.log1p(math.exp(t)) if t < 30 else t for t in neg) / len(neg))
    if kind == "DV":
        return (sum(pos) / len(pos)
                - math.log(sum(math.exp(t) for t in neg) / len(neg)))
    if kind == "KL":
        return (sum(pos) / len(pos)
                - sum(math.exp(t - 1.0) for t in neg) / len(neg))
    raise ValueError(kind)


def unsupervised_contrastive_oracle(node_reps, global_reps, graph_ids,
                                    unlabeled, p_local, p_global, kind):
    """Pairwise enumeration of the root-anchored MI loss."""
    local = np.asarray(node_reps, dtype=float) @ p_local
    glob = np.asarray(global_reps, dtype=float) @ p_global
    graph_ids = list(graph_ids)
    u_graphs = [g for g in range(len(glob)) if unlabeled[g]]
    if len(u_graphs) < 2:
        return 0.0
    total = 0.0
    for g in u_graphs:
        own = [v for v, gid in enumerate(graph_ids) if gid == g]
        others = [v for v, gid in enumerate(graph_ids)
                  if gid in u_graphs and gid != g]
        pos = [float(local[v] @ glob[g]) for v in own]
        neg = [float(local[v] @ glob[g]) for v in others]
        total += len(own) * mi_oracle(pos, neg, kind)
    return -total / len(u_graphs)


def cross_entropy_oracle(logits, labels):
    logits = np.asarray(logits, dtype=float)
    total = 0.0
    for row, label in zip(logits, labels):
        probs = np.exp(row - row.max())
        probs /= probs.sum()
        total += -math.log(probs[label])
    return total / len(labels)
