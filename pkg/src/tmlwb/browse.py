"""Document and tag inspection: attribute display, TimeML re-serialization
and TLINK-in-context views."""
from __future__ import annotations

import difflib
import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .errors import CommandError
from .model import (
    Corpus, Document, Event, EventInstance, Link, Signal, Timex3,
    INSTANCE, link_arg_attr_names, link_signal_text, position_string,
)

BROWSE_TAGS = ("event", "instance", "timex3", "signal", "tlink", "slink", "alink")


def select_document(corpus: Corpus, key: str | int) -> Document:
    """Resolve a document by id or filename; suggests near matches on miss."""
    if isinstance(key, int) or str(key).isdigit():
        doc = corpus.document(int(key))
        if doc is not None:
            return doc
    doc = corpus.document_by_filename(str(key))
    if doc is not None:
        return doc
    names = [d.filename for d in corpus.documents]
    close = difflib.get_close_matches(str(key), names, n=3, cutoff=0.4)
    hint = f"; did you mean: {', '.join(close)}" if close else ""
    raise CommandError(f"no document {key!r} in corpus {corpus.name!r}{hint}")


def _lookup(doc: Document, tag: str, tag_id: str):
    pools = {
        "event": doc.events, "instance": doc.instances, "timex3": doc.timexes,
        "signal": doc.signals,
    }
    if tag in pools:
        obj = pools[tag].get(tag_id)
    elif tag in ("tlink", "slink", "alink"):
        obj = doc.links.get(tag_id)
        if obj is not None and obj.kind != tag.upper():
            obj = None
    else:
        raise CommandError(f"unknown tag family {tag!r}; "
                           f"expected one of: {', '.join(BROWSE_TAGS)}")
    if obj is None:
        raise CommandError(f"no {tag} with id {tag_id!r} in {doc.filename}")
    return obj


# -- TimeML serialization -------------------------------------------------

def _attr_string(first: tuple[str, str], rest: dict[str, str]) -> str:
    # canonical order: id attribute first, the rest alphabetical
    parts = [f"{first[0]}={quoteattr(first[1])}"]
    for key in sorted(rest, key=str.lower):
        parts.append(f"{key}={quoteattr(rest[key])}")
    return " ".join(parts)


def serialize_tag(doc: Document, tag: str, tag_id: str) -> str:
    """Render one tag as a well-formed TimeML fragment."""
    obj = _lookup(doc, tag, tag_id)
    if isinstance(obj, Event):
        rest = {k: v for k, v in obj.attrs.items() if k != "eid"}
        return (f"<EVENT {_attr_string(('eid', obj.eid), rest)}>"
                f"{escape(obj.text)}</EVENT>")
    if isinstance(obj, Timex3):
        rest = {k: v for k, v in obj.attrs.items() if k != "tid"}
        return (f"<TIMEX3 {_attr_string(('tid', obj.tid), rest)}>"
                f"{escape(obj.text)}</TIMEX3>")
    if isinstance(obj, Signal):
        return (f"<SIGNAL {_attr_string(('sid', obj.sid), {})}>"
                f"{escape(obj.text)}</SIGNAL>")
    if isinstance(obj, EventInstance):
        rest = {k: v for k, v in obj.attrs.items() if k != "eiid"}
        return f"<MAKEINSTANCE {_attr_string(('eiid', obj.eiid), rest)}/>"
    return _serialize_link(obj)


def _link_attrs(link: Link) -> dict[str, str]:
    a1, a2 = link_arg_attr_names(link.kind, link.arg1, link.arg2)
    attrs = {"relType": link.rel_type, a1: link.arg1.ref_id, a2: link.arg2.ref_id}
    if link.signal_id:
        attrs["signalID"] = link.signal_id
    if link.origin:
        attrs["origin"] = link.origin
    return attrs


def _serialize_link(link: Link) -> str:
    return f"<{link.kind} {_attr_string(('lid', link.lid), _link_attrs(link))}/>"


def fragment_normal_form(xml_text: str) -> tuple[str, dict[str, str], str]:
    """(tag name, attributes, whitespace-normalized text) of a fragment."""
    elem = ET.fromstring(xml_text)
    text = " ".join("".join(elem.itertext()).split())
    return elem.tag, dict(elem.attrib), text


def tag_normal_form(doc: Document, tag: str, tag_id: str) -> tuple[str, dict[str, str], str]:
    """Normal form of a stored tag, for round-trip comparison."""
    obj = _lookup(doc, tag, tag_id)
    if isinstance(obj, Event):
        return "EVENT", dict(obj.attrs), obj.text
    if isinstance(obj, Timex3):
        return "TIMEX3", dict(obj.attrs), obj.text
    if isinstance(obj, Signal):
        return "SIGNAL", {"sid": obj.sid}, obj.text
    if isinstance(obj, EventInstance):
        return "MAKEINSTANCE", dict(obj.attrs), ""
    return obj.kind, {"lid": obj.lid, **_link_attrs(obj)}, ""


# -- display --------------------------------------------------------------

def _attr_rows(doc: Document, tag: str, obj) -> list[tuple[str, str]]:
    if isinstance(obj, (Event, Timex3)):
        id_attr = "eid" if isinstance(obj, Event) else "tid"
        rows = [(id_attr, getattr(obj, id_attr))]
        rows += sorted(((k, v) for k, v in obj.attrs.items() if k != id_attr),
                       key=lambda kv: kv[0].lower())
        rows.append(("text", obj.text))
        rows.append(("position", position_string(obj.position) or "-"))
        return rows
    if isinstance(obj, Signal):
        return [("sid", obj.sid), ("text", obj.text),
                ("position", position_string(obj.position) or "-")]
    if isinstance(obj, EventInstance):
        rows = [("eiid", obj.eiid)]
        rows += sorted(((k, v) for k, v in obj.attrs.items() if k != "eiid"),
                       key=lambda kv: kv[0].lower())
        return rows
    link: Link = obj
    rows = [("lid", link.lid)]
    rows += sorted(_link_attrs(link).items(), key=lambda kv: kv[0].lower())
    return rows


def _interval_text(doc: Document, ref) -> str | None:
    if ref.kind == INSTANCE:
        inst = doc.instances.get(ref.ref_id)
        event = doc.events.get(inst.event_id) if inst else None
        return event.text if event else None
    timex = doc.timexes.get(ref.ref_id)
    return timex.text if timex else None


def browse_tag(doc: Document, tag: str, tag_id: str, fmt: str = "screen") -> str:
    """Show one tag with its associated data, in screen, csv or timeml form."""
    if fmt == "timeml":
        return serialize_tag(doc, tag, tag_id)
    obj = _lookup(doc, tag, tag_id)
    rows = _attr_rows(doc, tag, obj)
    if fmt == "csv":
        import csv as _csv
        import io
        buf = io.StringIO()
        writer = _csv.writer(buf, lineterminator="\n")
        writer.writerow([k for k, _ in rows])
        writer.writerow([v for _, v in rows])
        return buf.getvalue().rstrip("\n")
    if fmt != "screen":
        raise CommandError(f"unknown browse format {fmt!r}; "
                           "expected screen, csv or timeml")
    lines = [f"{tag.upper()} {tag_id}"]
    lines += [f"  {k}: {v}" for k, v in rows[1:]]
    lines += _associated(doc, obj)
    return "\n".join(lines)


def _associated(doc: Document, obj) -> list[str]:
    lines: list[str] = []
    if isinstance(obj, Event):
        instances = [i for i in doc.instances.values() if i.event_id == obj.eid]
        if instances:
            lines.append("Instances:")
            for inst in instances:
                attrs = ", ".join(f"{k}={v}" for k, v in sorted(inst.attrs.items())
                                  if k not in ("eiid", "eventID"))
                lines.append(f"  MAKEINSTANCE {inst.eiid}: {attrs}")
    elif isinstance(obj, EventInstance):
        event = doc.events.get(obj.event_id)
        if event is not None:
            lines.append(f'Event {event.eid}: "{event.text}"')
        else:
            lines.append(f"Event {obj.event_id}: (missing)")
    elif isinstance(obj, Link):
        for name, ref in (("arg1", obj.arg1), ("arg2", obj.arg2)):
            text = _interval_text(doc, ref)
            shown = f'"{text}"' if text else "(unresolved)"
            lines.append(f"  {name}: {ref.ref_id} {shown}")
        signal_text = link_signal_text(doc, obj)
        if obj.signal_id:
            shown = f'"{signal_text}"' if signal_text else "(unresolved)"
            lines.append(f"  signal: {obj.signal_id} {shown}")
    return lines


def show_link_context(doc: Document, lid: str) -> str:
    """Print the sentence(s) containing a link's arguments with the argument
    spans bracket-highlighted, plus the relation and signal text."""
    link = doc.links.get(lid)
    if link is None:
        raise CommandError(f"no link with id {lid!r} in {doc.filename}")
    notes: list[str] = []
    marked: dict[int, set[tuple[int, int]]] = {}
    for name, ref in (("arg1", link.arg1), ("arg2", link.arg2)):
        tokens = _interval_tokens(doc, ref)
        if tokens is None:
            notes.append(f"note: {name} {ref.ref_id} does not resolve")
        elif not tokens:
            notes.append(f"note: {name} {ref.ref_id} has no text position")
        else:
            for tok in tokens:
                marked.setdefault(tok.sentence_index, set()).add(tok.position)
    lines: list[str] = []
    for sentence_index in sorted(marked):
        words = []
        for tok in doc.sentence_tokens(sentence_index):
            if tok.position in marked[sentence_index]:
                words.append(f"[{tok.surface}]")
            else:
                words.append(tok.surface)
        lines.append(" ".join(words))
    relation = f"{link.kind} {link.lid}: {link.arg1.ref_id} {link.rel_type} {link.arg2.ref_id}"
    signal_text = link_signal_text(doc, link)
    if signal_text:
        relation += f' (signal: "{signal_text}")'
    lines.append(relation)
    lines.extend(notes)
    return "\n".join(lines)


def _interval_tokens(doc: Document, ref):
    if ref.kind == INSTANCE:
        inst = doc.instances.get(ref.ref_id)
        event = doc.events.get(inst.event_id) if inst else None
        return event.tokens if event else None
    timex = doc.timexes.get(ref.ref_id)
    return timex.tokens if timex else None
