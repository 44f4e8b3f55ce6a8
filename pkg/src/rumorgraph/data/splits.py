"""Dataset splitting: balanced, imbalanced-injection, few-shot."""

import math
from dataclasses import replace

import numpy as np

from .types import Dataset


def _by_class(dataset, classes):
    groups = {c: [] for c in classes}
    for claim in dataset.claims:
        if claim.label not in groups:
            raise ValueError(f"claim {claim.claim_id!r} has label {claim.label!r} "
                             f"outside class set {classes}")
        groups[claim.label].append(claim)
    return groups


def make_balanced_split(dataset, ratios=(0.8, 0.1, 0.1), seed=0):
    """Partition a labeled dataset into train/val/test.

    Val and test receive equal per-class counts of floor(ratio * N / C)
    each; the remainder is the training set. Shuffling is seeded and the
    three parts partition the input exactly.
    """
    if dataset.kind != "labeled":
        raise ValueError("balanced split requires a labeled dataset")
    if len(ratios) != 3 or any(r < 0 for r in ratios) or abs(sum(ratios) - 1.0) > 1e-9:
        raise ValueError(f"ratios must be three non-negative numbers summing to 1, got {ratios}")
    classes = dataset.class_names()
    groups = _by_class(dataset, classes)
    total = len(dataset)
    n_val = int(math.floor(ratios[1] * total / len(classes)))
    n_test = int(math.floor(ratios[2] * total / len(classes)))
    rng = np.random.default_rng(seed)
    train, val, test = [], [], []
    for cls in classes:
        claims = groups[cls]
        if len(claims) < n_val + n_test:
            raise ValueError(
                f"class {cls!r} has {len(claims)} claims, needs at least "
                f"{n_val + n_test} for the balanced val/test demand")
        order = rng.permutation(len(claims))
        picked = [claims[i] for i in order]
        test.extend(picked[:n_test])
        val.extend(picked[n_test:n_test + n_val])
        train.extend(picked[n_test + n_val:])
    return (Dataset(tuple(train), "labeled"),
            Dataset(tuple(val), "labeled"),
            Dataset(tuple(test), "labeled"))


def make_imbalanced_testset(labeled_test, unlabeled_pool, rate, seed=0,
                            training_ids=None):
    """Append floor(rate * |pool|) pool claims to the test set as non-rumors.

    The injected claims must never have been trained on; when
    ``training_ids`` is given the selected claims are verified disjoint
    from it.
    """
    if rate < 0:
        raise ValueError(f"injection rate must be non-negative, got {rate}")
    n_inject = int(math.floor(rate * len(unlabeled_pool)))
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(unlabeled_pool))
    selected = [unlabeled_pool.claims[i] for i in order[:n_inject]]
    if training_ids is not None:
        overlap = {c.claim_id for c in selected} & set(training_ids)
        if overlap:
            raise ValueError(
                f"injected claims overlap the training set: {sorted(overlap)[:5]}")
    injected = [replace(c, label="N") for c in selected]
    return Dataset(tuple(labeled_test.claims) + tuple(injected), "labeled")


def make_fewshot_split(dataset, k, seed=0):
    """Exactly k labeled training claims, balanced across classes (+/-1).

    Classes are shuffled by the seed before the remainder of k is handed
    out, then per-class picks are seeded too. What is left over, trimmed
    to equal per-class counts, forms the balanced test pool.
    """
    if dataset.kind != "labeled":
        raise ValueError("few-shot split requires a labeled dataset")
    classes = dataset.class_names()
    groups = _by_class(dataset, classes)
    rng = np.random.default_rng(seed)
    class_order = [classes[i] for i in rng.permutation(len(classes))]
    base, extra = divmod(k, len(classes))
    want = {cls: base + (1 if i < extra else 0)
            for i, cls in enumerate(class_order)}
    train, leftovers = [], {}
    for cls in classes:
        claims = groups[cls]
        if len(claims) < want[cls] + 1:
            raise ValueError(
                f"class {cls!r} has {len(claims)} claims, needs {want[cls]} "
                f"for training plus at least 1 for the test pool")
        order = rng.permutation(len(claims))
        picked = [claims[i] for i in order]
        train.extend(picked[:want[cls]])
        leftovers[cls] = picked[want[cls]:]
    pool_per_class = min(len(v) for v in leftovers.values())
    test = []
    for cls in classes:
        test.extend(leftovers[cls][:pool_per_class])
    return Dataset(tuple(train), "labeled"), Dataset(tuple(test), "labeled")
