import pytest

from tmlwb.errors import QueryError
from tmlwb.model import (
    IntervalRef, Link, INSTANCE, link_signal_text, resolve_event_attribute,
)
from tmlwb.point_algebra import tlink_to_assertions

TABLE1_ROWS = [
    ("AFTER", "BEFORE"),
    ("IS_INCLUDED", "INCLUDES"),
    ("IAFTER", "IBEFORE"),
    ("BEGUN_BY", "BEGINS"),
    ("ENDED_BY", "ENDS"),
    ("DURING_INV", "SIMULTANEOUS"),
    ("DURING", "SIMULTANEOUS"),
    ("SIMULTANEOUS", "SIMULTANEOUS"),
]


def get_doc(corpus, name):
    doc = corpus.document_by_filename(name)
    assert doc is not None
    return doc


class TestResolveEventAttribute:
    def test_shared_event_pos(self, corpus):
        doc = get_doc(corpus, "loop_eventid.tml")
        mapping = resolve_event_attribute(doc, "pos")
        assert mapping == {"ei1": "VERB", "ei2": "VERB"}

    def test_event_sourced_text_shared(self, corpus):
        doc = get_doc(corpus, "loop_eventid.tml")
        mapping = resolve_event_attribute(doc, "text")
        assert mapping["ei1"] == mapping["ei2"] == "flown"

    def test_no_instances_empty_mapping(self, corpus):
        doc = get_doc(corpus, "all_relations.tml")
        assert resolve_event_attribute(doc, "pos") == {}

    def test_dangling_event_yields_absent(self, corpus):
        doc = get_doc(corpus, "orphans.tml")
        mapping = resolve_event_attribute(doc, "text")
        assert mapping["ei9"] is None

    def test_unknown_attribute_names_valid_ones(self, corpus):
        doc = get_doc(corpus, "consistent.tml")
        with pytest.raises(QueryError) as exc:
            resolve_event_attribute(doc, "flavour")
        assert "tense" in str(exc.value)

    def test_total_over_instances(self, corpus):
        for doc in corpus.documents:
            for attribute in ("pos", "tense", "text", "class"):
                assert len(resolve_event_attribute(doc, attribute)) == len(doc.instances)


class TestLinkSignalText:
    def test_single_word(self, corpus):
        doc = get_doc(corpus, "consistent.tml")
        assert link_signal_text(doc, doc.links["l2"]) == "before"

    def test_multiword(self, tmp_path):
        from tmlwb.ingest import parse_document
        path = tmp_path / "multi.tml"
        path.write_text(
            '<TimeML>He left <SIGNAL sid="s1">prior to</SIGNAL> dawn.\n'
            '<TLINK lid="l1" relType="BEFORE" timeID="t1" relatedToTime="t2" '
            'signalID="s1"/>\n</TimeML>')
        doc = parse_document(path)
        assert link_signal_text(doc, doc.links["l1"]) == "prior to"

    def test_no_signal(self, corpus):
        doc = get_doc(corpus, "consistent.tml")
        assert link_signal_text(doc, doc.links["l1"]) is None

    def test_dangling_signal(self, corpus):
        doc = get_doc(corpus, "consistent.tml")
        link = doc.links["l2"]
        from dataclasses import replace
        assert link_signal_text(doc, replace(link, signal_id="s99")) is None


class TestInvariants:
    @pytest.mark.parametrize("original,inverse", TABLE1_ROWS)
    def test_inverse_swap_preserves_point_set(self, original, inverse):
        a = IntervalRef(INSTANCE, "a")
        b = IntervalRef(INSTANCE, "b")
        link = Link("l1", "TLINK", original, a, b)
        swapped = Link("l1", "TLINK", inverse, b, a)
        assert tlink_to_assertions(link) == tlink_to_assertions(swapped)

    def test_token_positions_reconstruct_order(self, corpus):
        for doc in corpus.documents:
            positions = [(t.sentence_index, t.word_index) for t in doc.tokens]
            assert positions == sorted(positions)
            assert len(set(positions)) == len(positions)
