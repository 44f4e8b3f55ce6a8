"""Tests for parsing, tokenization, featurization, adjacency and batching."""

import json
import math

import numpy as np
import pytest

from rumorgraph.data import (ClaimFormatError, Claim, Dataset, Featurizer,
                             Post, PropagationTree, build_adjacency,
                             featurize, gcn_normalize, make_batch,
                             parse_claim_json, serialize_claim, tokenize)


def doc(source_text="root", comments=(), **extra):
    d = {"source": {"id": "s", "text": source_text},
         "comments": [{"id": c[0], "parent": c[1], "text": c[2]} for c in comments]}
    d.update(extra)
    return json.dumps(d)


def chain_claim(n, label=None):
    """A claim whose n posts form a single path s -> c1 -> ... -> c(n-1)."""
    comments = []
    prev = "s"
    for i in range(1, n):
        comments.append((f"c{i}", prev, f"reply {i}"))
        prev = f"c{i}"
    return parse_claim_json(doc(comments=comments, **({"label": label} if label else {})))


# parsing ---------------------------------------------------------------------

def test_parse_minimal_two_post_claim():
    claim = parse_claim_json(doc(comments=[("1", "s", "B")]))
    assert len(claim.tree.posts) == 2
    assert claim.tree.edges == ((0, 1),)
    assert claim.tree.posts[0].post_id == "s"


def test_parse_orphan_parent_names_comment():
    with pytest.raises(ClaimFormatError, match="'c1'.*missing parent 'nope'"):
        parse_claim_json(doc(comments=[("c1", "nope", "x")]))


def test_parse_second_root_rejected():
    with pytest.raises(ClaimFormatError, match="multiple roots"):
        parse_claim_json(json.dumps({
            "source": {"id": "s", "text": "a"},
            "comments": [{"id": "c1", "parent": None, "text": "b"}]}))


def test_parse_cycle_rejected():
    with pytest.raises(ClaimFormatError, match="cycle"):
        parse_claim_json(doc(comments=[("a", "b", "x"), ("b", "a", "y")]))


def test_parse_five_post_chain_depth():
    claim = chain_claim(5)
    assert len(claim.tree.edges) == 4
    assert claim.tree.max_depth() == 4


def test_parse_breadth_first_order():
    claim = parse_claim_json(doc(comments=[
        ("deep", "c1", "depth2"), ("c1", "s", "depth1 first"),
        ("c2", "s", "depth1 second")]))
    ids = [p.post_id for p in claim.tree.posts]
    assert ids == ["s", "c1", "c2", "deep"]


def test_roundtrip_is_identity():
    claim = parse_claim_json(doc(
        comments=[("c1", "s", "hello @bob"), ("c2", "c1", "see http://x.co 😀")],
        label="R", section="N", domain="finance"))
    text = serialize_claim(claim)
    again = parse_claim_json(text)
    assert again == claim
    assert serialize_claim(again) == text
    assert text.endswith("\n")


def test_dataset_kind_invariants():
    labeled = chain_claim(2, label="R")
    unlabeled = chain_claim(2)
    with pytest.raises(ValueError):
        Dataset((unlabeled,), "labeled")
    with pytest.raises(ValueError):
        Dataset((labeled,), "unlabeled")
    assert len(Dataset((labeled,), "labeled")) == 1


# tokenize / featurize ---------------------------------------------------------

def test_tokenize_mention_and_url():
    assert tokenize("@john check http://x.co") == ["<@user>", "check", "<url>"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_lowercase_punctuation():
    assert tokenize("Breaking NEWS!!") == ["breaking", "news"]


def test_tokenize_emoji_shortname():
    assert tokenize("fire 🔥 now") == ["fire", ":fire:", "now"]
    assert tokenize("😀😀") == [":grinning_face:", ":grinning_face:"]


def test_tokenize_www_and_unicode():
    assert tokenize("see www.example.com 中文 words") == ["see", "<url>", "中文", "words"]


def test_featurize_empty_node_is_zero_row():
    claim = parse_claim_json(doc(source_text="", comments=[("c1", "s", "words here")]))
    rows = featurize(claim.tree, Featurizer(dim=16, seed=1))
    assert not rows[0].any()
    assert rows[1].any()


def test_featurize_identical_texts_identical_rows():
    claim = parse_claim_json(doc(source_text="same text",
                                 comments=[("c1", "s", "same text")]))
    rows = featurize(claim.tree, Featurizer(dim=32, seed=3))
    np.testing.assert_array_equal(rows[0], rows[1])


def test_featurize_single_token_is_signed_unit_vector():
    f = Featurizer(dim=16, seed=5)
    idx, sign = f.token_slot("hello")
    claim = parse_claim_json(doc(source_text="hello"))
    rows = featurize(claim.tree, f)
    expected = np.zeros(16)
    expected[idx] = sign
    np.testing.assert_array_equal(rows[0], expected)


def test_featurize_rows_are_unit_norm_and_permutation_equivariant():
    f = Featurizer(dim=64, seed=2)
    c = parse_claim_json(doc(source_text="alpha beta",
                             comments=[("c1", "s", "gamma"), ("c2", "s", "delta")]))
    rows = featurize(c.tree, f)
    for r in rows:
        assert math.isclose(np.linalg.norm(r), 1.0, rel_tol=1e-12)
    # reorder posts: featurization is per-post, rows must follow
    swapped = PropagationTree(
        posts=(c.tree.posts[0], c.tree.posts[2], c.tree.posts[1]),
        root_index=0, edges=((0, 1), (0, 2)))
    rows2 = featurize(swapped, f)
    np.testing.assert_array_equal(rows2[1], rows[2])
    np.testing.assert_array_equal(rows2[2], rows[1])


def test_featurizer_rejects_bad_dim():
    with pytest.raises(ValueError):
        Featurizer(dim=0)


# adjacency ---------------------------------------------------------------------

def two_node_tree():
    return parse_claim_json(doc(comments=[("c1", "s", "x")])).tree


def test_adjacency_bottom_up():
    adj = build_adjacency(two_node_tree(), "bottom-up")
    assert adj.entries() == [(1, 0, 1.0)]


def test_adjacency_undirected():
    adj = build_adjacency(two_node_tree(), "undirected")
    assert sorted(adj.entries()) == [(0, 1, 1.0), (1, 0, 1.0)]


def test_adjacency_top_down_chain():
    tree = chain_claim(3).tree
    adj = build_adjacency(tree, "top-down")
    assert sorted(adj.entries()) == [(0, 1, 1.0), (1, 2, 1.0)]


def test_gcn_normalize_single_node():
    from rumorgraph.diffcore import SparseMatrix

    out = gcn_normalize(SparseMatrix.from_entries(1, 1, []))
    assert out.entries() == [(0, 0, 1.0)]


def test_gcn_normalize_undirected_pair_is_half_everywhere():
    adj = build_adjacency(two_node_tree(), "undirected")
    out = gcn_normalize(adj).to_dense()
    np.testing.assert_allclose(out, np.full((2, 2), 0.5))


def test_gcn_normalize_bottom_up_pair():
    adj = build_adjacency(two_node_tree(), "bottom-up")
    out = gcn_normalize(adj)
    dense = out.to_dense()
    np.testing.assert_allclose(dense[0, 0], 1.0)
    np.testing.assert_allclose(dense[1, 0], 1.0 / math.sqrt(2))
    np.testing.assert_allclose(dense[1, 1], 0.5)
    np.testing.assert_allclose(dense[0, 1], 0.0)


def test_gcn_normalize_symmetric_in_symmetric_out_entries_in_unit_interval():
    rng = np.random.default_rng(0)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        entries = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.5:
                    entries.append((i, j, 1.0))
                    entries.append((j, i, 1.0))
        from rumorgraph.diffcore import SparseMatrix

        out = gcn_normalize(SparseMatrix.from_entries(n, n, entries)).to_dense()
        np.testing.assert_allclose(out, out.T, atol=1e-15)
        present = out[out != 0]
        assert ((present > 0) & (present <= 1.0 + 1e-15)).all()


def test_gcn_normalize_rejects_non_square():
    from rumorgraph.diffcore import SparseMatrix

    with pytest.raises(ValueError):
        gcn_normalize(SparseMatrix.from_entries(2, 3, []))


# batching ------------------------------------------------------------------------

def test_batch_single_claim():
    batch = make_batch([chain_claim(2, label="R")], Featurizer(dim=8))
    assert batch.n_nodes == 2
    assert batch.graph_ids.tolist() == [0, 0]
    assert batch.root_indices.tolist() == [0]


def test_batch_two_claims_block_diagonal():
    claims = [chain_claim(2, label="R"), chain_claim(3, label="N")]
    batch = make_batch(claims, Featurizer(dim=8))
    assert batch.n_nodes == 5
    assert batch.graph_ids.tolist() == [0, 0, 1, 1, 1]
    assert batch.root_indices.tolist() == [0, 2]
    # no adjacency entry crosses the block boundary
    for r, c, _ in batch.adjacency.entries():
        assert (r < 2) == (c < 2)


def test_batch_unlabeled_mask():
    claims = [chain_claim(2, label="R"), chain_claim(2), chain_claim(2, label="N")]
    batch = make_batch(claims, Featurizer(dim=8))
    assert batch.unlabeled_mask.tolist() == [False, True, False]
    assert batch.labels.tolist() == [1, -1, 0]


def test_batch_empty_rejected():
    with pytest.raises(ValueError):
        make_batch([], Featurizer(dim=8))
