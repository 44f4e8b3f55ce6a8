"""Claim JSON ingestion and serialization.

One document per claim: ``source: {id, text}``, ``comments`` with
``{id, parent, text}`` where ``parent`` names an existing post id (the
source id for direct replies), plus optional ``label``, ``domain`` and
``section``. A dataset directory holds one file per claim and a
``manifest.json`` with the file list and the dataset kind.
"""

import json
import os

from .types import Claim, Dataset, Post, PropagationTree


class ClaimFormatError(ValueError):
    pass


def parse_claim_json(text):
    """Parse one claim document; posts come out root-first, breadth-first."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ClaimFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "source" not in doc:
        raise ClaimFormatError("claim document must be an object with a 'source'")
    source = doc["source"]
    if not isinstance(source, dict) or "id" not in source:
        raise ClaimFormatError("'source' must be an object with an 'id'")

    root_id = str(source["id"])
    texts = {root_id: str(source.get("text", ""))}
    parents = {}
    order = {root_id: 0}
    for i, comment in enumerate(doc.get("comments", [])):
        cid = str(comment.get("id", ""))
        if not cid:
            raise ClaimFormatError(f"comment #{i} has no id")
        if cid in texts:
            raise ClaimFormatError(f"duplicate post id {cid!r}")
        parent = comment.get("parent")
        if parent is None or parent == "":
            raise ClaimFormatError(
                f"comment {cid!r} has no parent (multiple roots are not allowed)")
        texts[cid] = str(comment.get("text", ""))
        parents[cid] = str(parent)
        order[cid] = i + 1

    children = {}
    for cid, pid in parents.items():
        if pid not in texts:
            raise ClaimFormatError(f"comment {cid!r} references missing parent {pid!r}")
        children.setdefault(pid, []).append(cid)

    # breadth-first from the source, document order within a level
    positions = {root_id: 0}
    bfs = [root_id]
    frontier = [root_id]
    while frontier:
        nxt = []
        for pid in frontier:
            for cid in sorted(children.get(pid, ()), key=order.__getitem__):
                positions[cid] = len(bfs)
                bfs.append(cid)
                nxt.append(cid)
        frontier = nxt
    if len(bfs) != len(texts):
        stranded = sorted(set(texts) - set(bfs), key=order.__getitem__)[0]
        raise ClaimFormatError(f"comment {stranded!r} is part of a parent cycle")

    posts = tuple(
        Post(post_id=pid,
             parent_id=parents.get(pid),
             text=texts[pid])
        for pid in bfs)
    edges = tuple((positions[parents[pid]], positions[pid]) for pid in bfs[1:])
    tree = PropagationTree(posts=posts, root_index=0, edges=edges)

    label = doc.get("label")
    section = doc.get("section")
    domain = doc.get("domain")
    try:
        return Claim(tree=tree, label=label, domain=domain, section=section)
    except ValueError as exc:
        raise ClaimFormatError(str(exc)) from exc


def serialize_claim(claim):
    """Deterministic JSON for a claim; newline-terminated."""
    tree = claim.tree
    root = tree.posts[tree.root_index]
    doc = {
        "source": {"id": root.post_id, "text": root.text},
        "comments": [
            {"id": p.post_id, "parent": p.parent_id, "text": p.text}
            for i, p in enumerate(tree.posts) if i != tree.root_index
        ],
    }
    if claim.label is not None:
        doc["label"] = claim.label
    if claim.domain is not None:
        doc["domain"] = claim.domain
    if claim.section is not None:
        doc["section"] = claim.section
    return json.dumps(doc, ensure_ascii=False, sort_keys=True) + "\n"


def save_dataset(dataset, directory):
    """Write one file per claim plus manifest.json."""
    os.makedirs(directory, exist_ok=True)
    names = []
    for i, claim in enumerate(dataset.claims):
        name = f"claim_{i:06d}.json"
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            fh.write(serialize_claim(claim))
        names.append(name)
    manifest = {"kind": dataset.kind, "files": names}
    with open(os.path.join(directory, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_dataset(directory):
    """Read a claim directory back into a Dataset."""
    manifest_path = os.path.join(directory, "manifest.json")
    if not os.path.exists(manifest_path):
        raise ClaimFormatError(f"no manifest.json in {directory}")
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    kind = manifest.get("kind")
    claims = []
    for name in manifest.get("files", []):
        with open(os.path.join(directory, name), encoding="utf-8") as fh:
            claims.append(parse_claim_json(fh.read()))
    return Dataset(claims=tuple(claims), kind=kind)
