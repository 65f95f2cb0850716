"""In-memory data model for TimeML corpora.

A Document holds the tags of one TimeML file. Tag objects keep the raw XML
attribute dictionary so that re-serialization loses nothing; typed accessors
cover the attributes the rest of the workbench needs. Everything is treated
as immutable after load.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import QueryError

# the closed set of TLINK relation types
TLINK_RELATIONS = frozenset({
    "BEFORE", "AFTER", "IBEFORE", "IAFTER",
    "INCLUDES", "IS_INCLUDED",
    "BEGINS", "BEGUN_BY", "ENDS", "ENDED_BY",
    "SIMULTANEOUS", "IDENTITY", "DURING", "DURING_INV",
})

EVENT_CLASSES = frozenset({
    "OCCURRENCE", "I_ACTION", "I_STATE", "STATE",
    "REPORTING", "PERCEPTION", "ASPECTUAL",
})

# interval kinds
INSTANCE = "instance"
TIMEX = "timex"

# attributes that live on MAKEINSTANCE vs. on EVENT (the event/instance
# abstraction translates between the two on demand)
INSTANCE_SOURCED = ("tense", "aspect", "polarity", "modality", "cardinality",
                    "pos", "signalid")
EVENT_SOURCED = ("class", "text", "lemma", "position")


@dataclass(frozen=True)
class IntervalRef:
    """Reference to a temporal primitive: an event instance or a TIMEX3."""
    kind: str  # INSTANCE or TIMEX
    ref_id: str


@dataclass(frozen=True)
class Token:
    sentence_index: int
    word_index: int
    surface: str
    lemma: str

    @property
    def position(self) -> tuple[int, int]:
        return (self.sentence_index, self.word_index)


@dataclass
class Event:
    eid: str
    attrs: dict[str, str]
    tokens: list[Token]

    @property
    def event_class(self) -> str | None:
        return self.attrs.get("class")

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    @property
    def lemma(self) -> str:
        return " ".join(t.lemma for t in self.tokens)

    @property
    def position(self) -> tuple[int, int] | None:
        return self.tokens[0].position if self.tokens else None


@dataclass
class EventInstance:
    eiid: str
    event_id: str
    attrs: dict[str, str]


@dataclass
class Timex3:
    tid: str
    attrs: dict[str, str]
    tokens: list[Token]

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    @property
    def lemma(self) -> str:
        return " ".join(t.lemma for t in self.tokens)

    @property
    def position(self) -> tuple[int, int] | None:
        return self.tokens[0].position if self.tokens else None


@dataclass
class Signal:
    sid: str
    tokens: list[Token]

    @property
    def text(self) -> str:
        return " ".join(t.surface for t in self.tokens)

    @property
    def lemma(self) -> str:
        return " ".join(t.lemma for t in self.tokens)

    @property
    def position(self) -> tuple[int, int] | None:
        return self.tokens[0].position if self.tokens else None


@dataclass
class Link:
    """Unified TLINK/SLINK/ALINK record with abstract arg1/arg2."""
    lid: str
    kind: str  # "TLINK" | "SLINK" | "ALINK"
    rel_type: str
    arg1: IntervalRef
    arg2: IntervalRef
    signal_id: str | None = None
    origin: str | None = None


def link_arg_attr_names(kind: str, arg1: IntervalRef, arg2: IntervalRef) -> tuple[str, str]:
    """The TimeML attribute names carrying arg1/arg2 for this link kind."""
    a1 = "eventInstanceID" if arg1.kind == INSTANCE else "timeID"
    if kind == "SLINK":
        a2 = "subordinatedEventInstance"
    elif arg2.kind == INSTANCE:
        a2 = "relatedToEventInstance"
    else:
        a2 = "relatedToTime"
    return a1, a2


@dataclass
class Document:
    doc_id: int
    filename: str
    tokens: list[Token] = field(default_factory=list)
    events: dict[str, Event] = field(default_factory=dict)
    instances: dict[str, EventInstance] = field(default_factory=dict)
    timexes: dict[str, Timex3] = field(default_factory=dict)
    signals: dict[str, Signal] = field(default_factory=dict)
    links: dict[str, Link] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def links_of_kind(self, kind: str) -> list[Link]:
        return [l for l in self.links.values() if l.kind == kind]

    @property
    def tlinks(self) -> list[Link]:
        return self.links_of_kind("TLINK")

    def sentence_tokens(self, sentence_index: int) -> list[Token]:
        return [t for t in self.tokens if t.sentence_index == sentence_index]


@dataclass
class Corpus:
    name: str
    note: str
    documents: list[Document] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)  # not persisted

    def document(self, doc_id: int) -> Document | None:
        for doc in self.documents:
            if doc.doc_id == doc_id:
                return doc
        return None

    def document_by_filename(self, filename: str) -> Document | None:
        for doc in self.documents:
            if doc.filename == filename:
                return doc
        return None


def position_string(pos: tuple[int, int] | None) -> str | None:
    return None if pos is None else f"{pos[0]}:{pos[1]}"


def resolve_event_attribute(doc: Document, attribute: str) -> dict[str, str | None]:
    """Map every event instance to its effective attribute value.

    Instance-level attributes come from the MAKEINSTANCE tag; text, lemma,
    class and position come from the referenced EVENT. Instances whose
    event reference dangles get None for event-sourced attributes.
    """
    attribute = attribute.lower()
    valid = tuple(INSTANCE_SOURCED) + tuple(EVENT_SOURCED) + ("eiid", "eventid")
    if attribute not in valid:
        raise QueryError(
            f"unknown event attribute {attribute!r}; valid attributes: "
            + ", ".join(sorted(valid)))
    out: dict[str, str | None] = {}
    for eiid, inst in doc.instances.items():
        if attribute == "eiid":
            out[eiid] = eiid
        elif attribute == "eventid":
            out[eiid] = inst.event_id
        elif attribute in INSTANCE_SOURCED:
            out[eiid] = _attr(inst.attrs, attribute)
        else:
            event = doc.events.get(inst.event_id)
            if event is None:
                out[eiid] = None
            elif attribute == "text":
                out[eiid] = event.text or None
            elif attribute == "lemma":
                out[eiid] = event.lemma or None
            elif attribute == "class":
                out[eiid] = event.event_class
            else:  # position
                out[eiid] = position_string(event.position)
    return out


def _attr(attrs: dict[str, str], name: str) -> str | None:
    for key, value in attrs.items():
        if key.lower() == name:
            return value if value != "" else None
    return None


def link_signal_text(doc: Document, link: Link) -> str | None:
    """The token span of a link's SIGNAL, joined with single spaces."""
    if not link.signal_id:
        return None
    signal = doc.signals.get(link.signal_id)
    if signal is None:
        return None
    return signal.text or None
