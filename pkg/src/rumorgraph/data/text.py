"""Tokenization and the signed-hashing featurizer.

Tokens: user mentions collapse to ``<@user>``, URL spans to ``<url>``,
each emoji scalar becomes its colon-delimited short-name token, and the
remaining text is lowercased and split on whitespace/punctuation.

Node features are d-dimensional signed token hashes: each token maps
deterministically to one coordinate and a sign, the token vectors of a
post are summed and L2-normalized.
"""

import hashlib
import re
import unicodedata

import numpy as np

_SPECIAL = re.compile(
    r"(?P<url>(?:[a-zA-Z][a-zA-Z0-9+.\-]*://|www\.)\S+)"
    r"|(?P<mention>(?<!\w)@\w+)")
_WORD = re.compile(r"\w+")

# codepoint ranges treated as emoji scalars
_EMOJI_RANGES = (
    (0x1F000, 0x1FAFF),
    (0x2600, 0x27BF),
    (0x2B00, 0x2BFF),
)


def _emoji_token(ch):
    cp = ord(ch)
    for lo, hi in _EMOJI_RANGES:
        if lo <= cp <= hi:
            try:
                name = unicodedata.name(ch)
            except ValueError:
                return None
            return ":" + name.lower().replace(" ", "_").replace("-", "_") + ":"
    return None


def _plain_tokens(chunk, out):
    buf = []
    for ch in chunk:
        emoji = _emoji_token(ch)
        if emoji is None:
            buf.append(ch)
            continue
        out.extend(_WORD.findall("".join(buf).lower()))
        buf.clear()
        out.append(emoji)
    out.extend(_WORD.findall("".join(buf).lower()))


def tokenize(text):
    """Split text into normalized tokens; empty text gives an empty list."""
    tokens = []
    pos = 0
    for m in _SPECIAL.finditer(text):
        _plain_tokens(text[pos:m.start()], tokens)
        tokens.append("<url>" if m.lastgroup == "url" else "<@user>")
        pos = m.end()
    _plain_tokens(text[pos:], tokens)
    return tokens


class Featurizer:
    """Deterministic signed token hashing into a fixed dimension."""

    def __init__(self, dim=200, seed=0):
        if dim <= 0:
            raise ValueError(f"feature dimension must be positive, got {dim}")
        self.dim = int(dim)
        self.seed = int(seed)
        self._slots = {}

    def token_slot(self, token):
        """(coordinate, sign) for a token; stable across runs and platforms."""
        slot = self._slots.get(token)
        if slot is None:
            digest = hashlib.blake2b(
                f"{self.seed}\x1f{token}".encode("utf-8"), digest_size=9).digest()
            idx = int.from_bytes(digest[:8], "big") % self.dim
            sign = 1.0 if digest[8] & 1 else -1.0
            slot = (idx, sign)
            self._slots[token] = slot
        return slot

    def vector(self, tokens):
        v = np.zeros(self.dim)
        for tok in tokens:
            idx, sign = self.token_slot(tok)
            v[idx] += sign
        norm = np.sqrt((v * v).sum())
        if norm > 0:
            v /= norm
        return v

    def __eq__(self, other):
        return (isinstance(other, Featurizer)
                and (self.dim, self.seed) == (other.dim, other.seed))

    def __repr__(self):
        return f"Featurizer(dim={self.dim}, seed={self.seed})"


def featurize(tree, featurizer):
    """Per-post feature rows for a tree, in post order; |V| x dim float64."""
    out = np.zeros((len(tree.posts), featurizer.dim))
    for i, post in enumerate(tree.posts):
        if post.tokens:
            out[i] = featurizer.vector(post.tokens)
    return out
