"""Distribution summaries: reply depth shape and section mixtures."""

from dataclasses import dataclass

from .types import VALID_SECTIONS

SHALLOW_MAX_DEPTH = 2


@dataclass(frozen=True)
class DepthStats:
    avg_replies: float
    shallow_fraction: float  # replies at depth <= 2
    deep_fraction: float     # replies at depth > 2
    n_replies: int


def depth_stats(dataset):
    """Average reply count plus shallow/deep reply fractions over a corpus."""
    shallow = deep = 0
    n_claims = len(dataset.claims)
    for claim in dataset.claims:
        for pos, depth in enumerate(claim.tree.depths()):
            if pos == claim.tree.root_index:
                continue
            if depth <= SHALLOW_MAX_DEPTH:
                shallow += 1
            else:
                deep += 1
    replies = shallow + deep
    return DepthStats(
        avg_replies=replies / n_claims if n_claims else 0.0,
        shallow_fraction=shallow / replies if replies else 0.0,
        deep_fraction=deep / replies if replies else 0.0,
        n_replies=replies,
    )


def _fractions(counts):
    total = sum(counts.values())
    if total == 0:
        return {}
    return {key: count / total for key, count in counts.items()}


def section_distribution(dataset):
    """Per-section fractions, overall and per class.

    Claims without section metadata land in an ``unknown`` bucket; claims
    without labels are grouped under ``unlabeled``. Every returned
    grouping's fractions sum to 1.
    """
    buckets = list(VALID_SECTIONS) + ["unknown"]
    overall = {b: 0 for b in buckets}
    by_class = {}
    for claim in dataset.claims:
        section = claim.section if claim.section in VALID_SECTIONS else "unknown"
        overall[section] += 1
        cls = claim.label if claim.label is not None else "unlabeled"
        row = by_class.setdefault(cls, {b: 0 for b in buckets})
        row[section] += 1
    return {
        "overall": _fractions({k: v for k, v in overall.items() if v}),
        "by_class": {cls: _fractions({k: v for k, v in row.items() if v})
                     for cls, row in sorted(by_class.items())},
        "counts": {
            "overall": {k: v for k, v in overall.items() if v},
            "by_class": {cls: {k: v for k, v in row.items() if v}
                         for cls, row in sorted(by_class.items())},
        },
    }
