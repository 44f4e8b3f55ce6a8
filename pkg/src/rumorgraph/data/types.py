"""Domain types: posts, propagation trees, claims, datasets.

All types are immutable after construction; parsing and featurization of
distinct claims can safely run in parallel.
"""

from dataclasses import dataclass, field
from typing import Optional

BINARY_CLASSES = ("N", "R")
FOUR_CLASSES = ("N", "F", "T", "U")
VALID_LABELS = frozenset(BINARY_CLASSES) | frozenset(FOUR_CLASSES)
VALID_SECTIONS = ("E", "K", "N")  # Entertainment / Knowledge / News
RUMOR_LABELS = frozenset(VALID_LABELS) - {"N"}


@dataclass(frozen=True)
class Post:
    """One post in a conversation: the source (no parent) or a reply."""

    post_id: str
    parent_id: Optional[str]
    text: str
    tokens: tuple = field(default=None)

    def __post_init__(self):
        if self.tokens is None:
            from .text import tokenize

            object.__setattr__(self, "tokens", tuple(tokenize(self.text)))


@dataclass(frozen=True)
class PropagationTree:
    """Rooted reply tree; posts are stored root-first in breadth-first order."""

    posts: tuple
    root_index: int
    edges: tuple  # (parent position, child position) pairs

    def __post_init__(self):
        n = len(self.posts)
        if n == 0:
            raise ValueError("a propagation tree needs at least the source post")
        if not (0 <= self.root_index < n):
            raise ValueError(f"root index {self.root_index} out of range")
        if self.posts[self.root_index].parent_id is not None:
            raise ValueError("root post must not have a parent")
        if len(self.edges) != n - 1:
            raise ValueError(
                f"tree with {n} posts must have {n - 1} edges, got {len(self.edges)}")
        seen_child = set()
        children = {}
        for parent, child in self.edges:
            if child in seen_child or child == self.root_index:
                raise ValueError(f"post position {child} has multiple parents")
            seen_child.add(child)
            children.setdefault(parent, []).append(child)
        # breadth-first reachability doubles as the acyclicity check
        frontier = [self.root_index]
        reached = {self.root_index}
        while frontier:
            nxt = []
            for p in frontier:
                for c in children.get(p, ()):
                    reached.add(c)
                    nxt.append(c)
            frontier = nxt
        if len(reached) != n:
            raise ValueError("tree is not connected (cycle or orphan present)")

    def __len__(self):
        return len(self.posts)

    def depths(self):
        """Edge distance from the root for every post position."""
        depth = [0] * len(self.posts)
        children = {}
        for parent, child in self.edges:
            children.setdefault(parent, []).append(child)
        frontier = [self.root_index]
        while frontier:
            nxt = []
            for p in frontier:
                for c in children.get(p, ()):
                    depth[c] = depth[p] + 1
                    nxt.append(c)
            frontier = nxt
        return depth

    def max_depth(self):
        return max(self.depths())


@dataclass(frozen=True)
class Claim:
    """A source post with its reply tree and optional metadata."""

    tree: PropagationTree
    label: Optional[str] = None
    domain: Optional[str] = None
    section: Optional[str] = None

    def __post_init__(self):
        if self.label is not None and self.label not in VALID_LABELS:
            raise ValueError(f"unknown label {self.label!r}")
        if self.section is not None and self.section not in VALID_SECTIONS:
            raise ValueError(f"unknown section {self.section!r}")

    @property
    def claim_id(self):
        return self.tree.posts[self.tree.root_index].post_id

    @property
    def is_labeled(self):
        return self.label is not None


@dataclass(frozen=True)
class Dataset:
    """A collection of claims, either fully labeled or fully unlabeled."""

    claims: tuple
    kind: str

    def __post_init__(self):
        if self.kind not in ("labeled", "unlabeled"):
            raise ValueError(f"dataset kind must be labeled|unlabeled, got {self.kind!r}")
        object.__setattr__(self, "claims", tuple(self.claims))
        for claim in self.claims:
            if self.kind == "labeled" and claim.label is None:
                raise ValueError(f"claim {claim.claim_id!r} in labeled dataset has no label")
            if self.kind == "unlabeled" and claim.label is not None:
                raise ValueError(f"claim {claim.claim_id!r} in unlabeled dataset has a label")

    def __len__(self):
        return len(self.claims)

    def __iter__(self):
        return iter(self.claims)

    def class_names(self):
        """Canonical class tuple for the labels present (binary or 4-class)."""
        labels = {c.label for c in self.claims if c.label is not None}
        if labels & {"F", "T", "U"}:
            return FOUR_CLASSES
        return BINARY_CLASSES
