"""TimeML XML parsing, relation folding and corpus import."""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from . import tokenizer
from .errors import LoadError
from .model import (
    Corpus, Document, Event, EventInstance, IntervalRef, Link, Signal,
    Timex3, Token, INSTANCE, TIMEX, TLINK_RELATIONS,
)
from .point_algebra import tlink_to_assertions

SPAN_TAGS = ("EVENT", "TIMEX3", "SIGNAL")


@dataclass(frozen=True)
class FoldScheme:
    """A relation-rewriting table; swap means arg1/arg2 are exchanged."""
    name: str
    mapping: dict[str, tuple[str, bool]]
    lossless: bool


def _fold_lossless(mapping: dict[str, tuple[str, bool]]) -> bool:
    """A fold is lossless iff every row preserves the point-assertion set."""
    a = IntervalRef(INSTANCE, "a")
    b = IntervalRef(INSTANCE, "b")
    for original, (target, swap) in mapping.items():
        before = tlink_to_assertions(Link("l", "TLINK", original, a, b))
        args = (b, a) if swap else (a, b)
        after = tlink_to_assertions(Link("l", "TLINK", target, *args))
        if before != after:
            return False
    return True


# Inverse-collapsing fold: every mapped row swaps the link arguments.
CAVAT_FOLD = FoldScheme("cavat", {
    "AFTER": ("BEFORE", True),
    "IS_INCLUDED": ("INCLUDES", True),
    "IAFTER": ("IBEFORE", True),
    "BEGUN_BY": ("BEGINS", True),
    "ENDED_BY": ("ENDS", True),
    "DURING_INV": ("SIMULTANEOUS", True),
    "DURING": ("SIMULTANEOUS", True),
    "SIMULTANEOUS": ("SIMULTANEOUS", True),
}, lossless=True)

# Lossy three-class fold down to {BEFORE, INCLUDES, SIMULTANEOUS}.
COMPACT_FOLD = FoldScheme("compact", {
    "AFTER": ("BEFORE", True),
    "IBEFORE": ("BEFORE", False),
    "IAFTER": ("BEFORE", True),
    "IS_INCLUDED": ("INCLUDES", True),
    "BEGINS": ("INCLUDES", True),
    "BEGUN_BY": ("INCLUDES", False),
    "ENDS": ("INCLUDES", True),
    "ENDED_BY": ("INCLUDES", False),
    "DURING": ("SIMULTANEOUS", False),
    "DURING_INV": ("SIMULTANEOUS", False),
    "IDENTITY": ("SIMULTANEOUS", False),
}, lossless=False)

NO_FOLD = FoldScheme("none", {}, lossless=True)


def load_fold_file(path: Path | str, name: str) -> FoldScheme:
    """Load a fold table from a text file: ORIGINAL<TAB>TARGET<TAB>swap|noswap."""
    mapping: dict[str, tuple[str, bool]] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LoadError(f"{path}:{lineno}: expected ORIGINAL<TAB>TARGET<TAB>swap|noswap")
        original, target, swap = (p.strip() for p in parts)
        original, target = original.upper(), target.upper()
        if original not in TLINK_RELATIONS or target not in TLINK_RELATIONS:
            raise LoadError(f"{path}:{lineno}: unknown relation type")
        if swap not in ("swap", "noswap"):
            raise LoadError(f"{path}:{lineno}: third column must be swap or noswap")
        mapping[original] = (target, swap == "swap")
    return FoldScheme(name, mapping, _fold_lossless(mapping))


def get_fold_scheme(name: str) -> FoldScheme:
    """Look up a fold scheme by name (none, cavat, compact, sputlink)."""
    name = name.lower()
    builtin = {"none": NO_FOLD, "cavat": CAVAT_FOLD, "compact": COMPACT_FOLD}
    if name in builtin:
        return builtin[name]
    if name == "sputlink":
        ref = resources.files("tmlwb").joinpath("data/folds/sputlink.fold")
        with resources.as_file(ref) as path:
            return load_fold_file(path, "sputlink")
    raise LoadError(f"unknown fold scheme {name!r}; available: none, cavat, compact, sputlink")


def apply_fold(doc: Document, scheme: FoldScheme) -> Document:
    """Rewrite TLINK relation types per the fold table; SLINK/ALINK untouched.

    Rows mapping a relation to itself are identities: the arguments are not
    swapped, which keeps folding idempotent (such relations are symmetric in
    point terms, so nothing is lost).
    """
    links = {}
    for lid, link in doc.links.items():
        if link.kind == "TLINK" and link.rel_type in scheme.mapping:
            target, swap = scheme.mapping[link.rel_type]
            if target != link.rel_type:
                if swap:
                    link = replace(link, rel_type=target,
                                   arg1=link.arg2, arg2=link.arg1)
                else:
                    link = replace(link, rel_type=target)
        links[lid] = link
    return replace(doc, links=links)


def parse_document(path: Path | str, doc_id: int = 0) -> Document:
    """Parse one TimeML file into a Document.

    Malformed XML raises LoadError. Links with an unknown TLINK relType and
    tags with duplicate or missing ids are skipped with a warning recorded
    on the document; dangling id references also become warnings.
    """
    path = Path(path)
    try:
        tree = ET.parse(path)
    except ET.ParseError as exc:
        raise LoadError(f"{path.name}: malformed XML ({exc})") from exc
    doc = Document(doc_id=doc_id, filename=path.name)
    root = tree.getroot()

    chars: list[str] = []
    spans: list[tuple[ET.Element, int, int]] = []
    _collect_text(root, chars, spans)
    text = "".join(chars)

    tokens, by_offset = _tokenize(text)
    doc.tokens = tokens

    span_tokens: dict[int, list[Token]] = {}
    for elem, start, end in spans:
        span_tokens[id(elem)] = [tok for (ts, te), tok in by_offset if ts < end and te > start]

    for elem in root.iter():
        tag = elem.tag.upper()
        attrs = dict(elem.attrib)
        if tag == "EVENT":
            eid = attrs.get("eid")
            if not _check_id(doc, eid, doc.events, "EVENT", "eid"):
                continue
            doc.events[eid] = Event(eid, attrs, span_tokens.get(id(elem), []))
        elif tag == "TIMEX3":
            tid = attrs.get("tid")
            if not _check_id(doc, tid, doc.timexes, "TIMEX3", "tid"):
                continue
            doc.timexes[tid] = Timex3(tid, attrs, span_tokens.get(id(elem), []))
        elif tag == "SIGNAL":
            sid = attrs.get("sid")
            if not _check_id(doc, sid, doc.signals, "SIGNAL", "sid"):
                continue
            doc.signals[sid] = Signal(sid, span_tokens.get(id(elem), []))
        elif tag == "MAKEINSTANCE":
            eiid = attrs.get("eiid")
            if not _check_id(doc, eiid, doc.instances, "MAKEINSTANCE", "eiid"):
                continue
            event_id = attrs.get("eventID", "")
            doc.instances[eiid] = EventInstance(eiid, event_id, attrs)
        elif tag in ("TLINK", "SLINK", "ALINK"):
            link = _parse_link(doc, tag, attrs)
            if link is not None:
                doc.links[link.lid] = link

    _check_dangling(doc)
    return doc


def _collect_text(elem: ET.Element, chars: list[str], spans: list) -> None:
    start = sum(len(c) for c in chars)
    if elem.text:
        chars.append(elem.text)
    for child in elem:
        _collect_text(child, chars, spans)
        if child.tail:
            chars.append(child.tail)
    if elem.tag.upper() in SPAN_TAGS:
        end = sum(len(c) for c in chars)
        spans.append((elem, start, end))


def _tokenize(text: str):
    tokens: list[Token] = []
    by_offset: list[tuple[tuple[int, int], Token]] = []
    for s_index, (s_start, s_end) in enumerate(tokenizer.sentence_spans(text)):
        for w_index, (w_start, w_end) in enumerate(tokenizer.word_spans(text, s_start, s_end)):
            surface = text[w_start:w_end]
            tok = Token(s_index, w_index, surface, tokenizer.lemmatize(surface))
            tokens.append(tok)
            by_offset.append(((w_start, w_end), tok))
    return tokens, by_offset


def _check_id(doc: Document, tag_id, existing: dict, family: str, attr: str) -> bool:
    if not tag_id:
        doc.warnings.append(f"{family} without {attr} skipped")
        return False
    if tag_id in existing:
        doc.warnings.append(f"duplicate {family} id {tag_id}; keeping first")
        return False
    return True


def _parse_link(doc: Document, kind: str, attrs: dict[str, str]) -> Link | None:
    lid = attrs.get("lid")
    if not lid:
        doc.warnings.append(f"{kind} without lid skipped")
        return None
    if lid in doc.links:
        doc.warnings.append(f"duplicate link id {lid}; keeping first")
        return None
    rel_type = attrs.get("relType", "").upper()
    if kind == "TLINK" and rel_type not in TLINK_RELATIONS:
        doc.warnings.append(f"TLINK {lid} has unknown relType {attrs.get('relType')!r}; skipped")
        return None
    arg1 = _link_arg(attrs, ("eventInstanceID", INSTANCE), ("timeID", TIMEX))
    if kind == "SLINK":
        arg2 = _link_arg(attrs, ("subordinatedEventInstance", INSTANCE))
    else:
        arg2 = _link_arg(attrs, ("relatedToEventInstance", INSTANCE),
                         ("relatedToTime", TIMEX))
    if arg1 is None or arg2 is None:
        doc.warnings.append(f"{kind} {lid} missing an argument; skipped")
        return None
    return Link(lid, kind, rel_type, arg1, arg2,
                signal_id=attrs.get("signalID") or None,
                origin=attrs.get("origin") or None)


def _link_arg(attrs: dict[str, str], *candidates: tuple[str, str]) -> IntervalRef | None:
    for attr_name, kind in candidates:
        value = attrs.get(attr_name)
        if value:
            return IntervalRef(kind, value)
    return None


def _check_dangling(doc: Document) -> None:
    for inst in doc.instances.values():
        if inst.event_id and inst.event_id not in doc.events:
            doc.warnings.append(
                f"MAKEINSTANCE {inst.eiid} references missing event {inst.event_id}")
    for link in doc.links.values():
        if link.signal_id and link.signal_id not in doc.signals:
            doc.warnings.append(
                f"{link.kind} {link.lid} references missing signal {link.signal_id}")
        for ref in (link.arg1, link.arg2):
            pool = doc.instances if ref.kind == INSTANCE else doc.timexes
            if ref.ref_id not in pool:
                doc.warnings.append(
                    f"{link.kind} {link.lid} references missing {ref.kind} {ref.ref_id}")
    for inst in doc.instances.values():
        signal_id = inst.attrs.get("signalID")
        if signal_id and signal_id not in doc.signals:
            doc.warnings.append(
                f"MAKEINSTANCE {inst.eiid} references missing signal {signal_id}")


def import_corpus(directory: Path | str, name: str,
                  fold: FoldScheme = NO_FOLD) -> Corpus:
    """Parse every regular file in a directory (non-recursive) into a corpus.

    Documents are numbered from 1 in filename sort order. Unparseable files
    are skipped and recorded on corpus.skipped; a corpus with zero parseable
    files is an error.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise LoadError(f"not a directory: {directory}")
    corpus = Corpus(name=name, note=f"fold={fold.name}")
    doc_id = 0
    for path in sorted(p for p in directory.iterdir() if p.is_file()):
        try:
            doc = parse_document(path, doc_id=doc_id + 1)
        except LoadError as exc:
            corpus.skipped.append(str(exc))
            continue
        doc_id += 1
        corpus.documents.append(apply_fold(doc, fold))
    if not corpus.documents:
        raise LoadError(f"no parseable TimeML files in {directory}")
    return corpus
