import random
from pathlib import Path

import pytest

from tmlwb.ingest import import_corpus
from tmlwb.model import Document, IntervalRef, Link, INSTANCE, TLINK_RELATIONS

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "timeml"
GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def corpus():
    return import_corpus(FIXTURE_DIR, "fixture")


@pytest.fixture
def workspace(tmp_path, monkeypatch):
    home = tmp_path / "wb"
    monkeypatch.setenv("TMLWB_HOME", str(home))
    return home


def make_doc(relations, doc_id=1, filename="synthetic.tml"):
    """Document with only TLINKs: relations is [(rel, a, b), ...] over
    interval id strings."""
    doc = Document(doc_id=doc_id, filename=filename)
    for i, (rel, a, b) in enumerate(relations, start=1):
        doc.links[f"l{i}"] = Link(
            f"l{i}", "TLINK", rel,
            IntervalRef(INSTANCE, a), IntervalRef(INSTANCE, b))
    return doc


def random_doc(rng: random.Random, max_intervals=8, max_links=12):
    n = rng.randint(1, max_intervals)
    ids = [f"ei{i}" for i in range(n)]
    rels = sorted(TLINK_RELATIONS)
    relations = []
    for _ in range(rng.randint(0, max_links)):
        relations.append((rng.choice(rels), rng.choice(ids), rng.choice(ids)))
    return make_doc(relations)


def golden_check(name: str, actual: str):
    """Compare against a committed golden file; UPDATE_GOLDENS=1 rewrites."""
    import os
    path = GOLDEN_DIR / name
    if os.environ.get("UPDATE_GOLDENS") == "1":
        path.write_text(actual + "\n", encoding="utf-8")
    expected = path.read_text(encoding="utf-8").rstrip("\n")
    assert actual == expected, f"golden mismatch for {name}"
