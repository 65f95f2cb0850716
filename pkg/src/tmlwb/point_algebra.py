"""Point-algebra consistency checking for the temporal graph of a document.

Intervals are split into start/end points and every TLINK becomes one or two
assertions over those points, using only `<` (before) and `=` (simultaneous).
An agenda/database worklist then closes the assertion set under the inference
rules; the document is consistent iff the agenda empties without conflict.

Assertions are plain tuples ``(rel, left, right)`` where rel is "<" or "=",
and points are ``(interval_id, 1)`` for the start and ``(interval_id, 2)``
for the end. Equalities are kept with the lexicographically smaller point
first so that set comparisons are well defined.
"""
from __future__ import annotations

import graphlib
from collections import deque
from dataclasses import dataclass

from .model import Document, Link

START = 1
END = 2

Point = tuple[str, int]
Assertion = tuple[str, Point, Point]

# TimeML relation -> point assertion templates, with the link written
# "arg1 REL arg2". Each template is (rel, (arg, point), (arg, point)).
_A, _B = "a", "b"
TLINK_POINT_MAP: dict[str, tuple[tuple[str, tuple[str, int], tuple[str, int]], ...]] = {
    "BEFORE":       (("<", (_A, END), (_B, START)),),
    "AFTER":        (("<", (_B, END), (_A, START)),),
    "IAFTER":       (("=", (_B, END), (_A, START)),),
    "IBEFORE":      (("=", (_A, END), (_B, START)),),
    "INCLUDES":     (("<", (_A, START), (_B, START)), ("<", (_B, END), (_A, END))),
    "IS_INCLUDED":  (("<", (_B, START), (_A, START)), ("<", (_A, END), (_B, END))),
    "BEGINS":       (("=", (_A, START), (_B, START)), ("<", (_A, END), (_B, END))),
    "BEGUN_BY":     (("=", (_A, START), (_B, START)), ("<", (_B, END), (_A, END))),
    "ENDS":         (("=", (_A, END), (_B, END)), ("<", (_B, START), (_A, START))),
    "ENDED_BY":     (("=", (_B, END), (_A, END)), ("<", (_A, START), (_B, START))),
    "SIMULTANEOUS": (("=", (_A, START), (_B, START)), ("=", (_A, END), (_B, END))),
    "IDENTITY":     (("=", (_A, START), (_B, START)), ("=", (_B, END), (_A, END))),
    "DURING":       (("=", (_A, START), (_B, START)), ("=", (_A, END), (_B, END))),
    "DURING_INV":   (("=", (_A, START), (_B, START)), ("=", (_A, END), (_B, END))),
}


def point_name(p: Point) -> str:
    return f"{p[0]}_{p[1]}"


def assertion_text(a: Assertion) -> str:
    rel, left, right = a
    return f"({point_name(left)} {rel} {point_name(right)})"


def _eq(x: Point, y: Point) -> Assertion:
    return ("=", x, y) if x <= y else ("=", y, x)


def _lt(x: Point, y: Point) -> Assertion:
    return ("<", x, y)


def tlink_to_assertions(link: Link) -> set[Assertion]:
    """Instantiate the point templates for one TLINK."""
    if link.kind != "TLINK":
        raise ValueError(f"not a TLINK: {link.lid}")
    ids = {_A: link.arg1.ref_id, _B: link.arg2.ref_id}
    out: set[Assertion] = set()
    for rel, (la, lp), (ra, rp) in TLINK_POINT_MAP[link.rel_type]:
        left: Point = (ids[la], lp)
        right: Point = (ids[ra], rp)
        out.add(_lt(left, right) if rel == "<" else _eq(left, right))
    return out


def interval_axioms(interval_ids: set[str]) -> set[Assertion]:
    """One start-before-end axiom per interval."""
    return {_lt((i, START), (i, END)) for i in interval_ids}


def document_assertions(doc: Document) -> tuple[set[Assertion], list[Assertion]]:
    """(axioms, initial agenda) for a document's TLINKs."""
    intervals: set[str] = set()
    agenda: list[Assertion] = []
    seen: set[Assertion] = set()
    for link in doc.tlinks:
        intervals.add(link.arg1.ref_id)
        intervals.add(link.arg2.ref_id)
        for a in sorted(tlink_to_assertions(link)):
            if a not in seen:
                seen.add(a)
                agenda.append(a)
    return interval_axioms(intervals), agenda


@dataclass
class ConsistencyResult:
    consistent: bool
    conflict: Assertion | None
    processed: int

    @property
    def message(self) -> str | None:
        if self.consistent:
            return None
        return f"! Inconsistent closure - could not assert {assertion_text(self.conflict)}"


def _conflicts(a: Assertion, seen: set[Assertion]) -> bool:
    rel, left, right = a
    if rel == "<":
        return left == right or ("<", right, left) in seen or _eq(left, right) in seen
    return ("<", left, right) in seen or ("<", right, left) in seen


def _combine(a: Assertion, b: Assertion):
    """Apply the inference rules to one pair of assertions."""
    ra, la, ca = a[0], a[1], a[2]
    rb, lb, cb = b[0], b[1], b[2]
    if ra == "<" and rb == "<":
        if ca == lb:
            yield _lt(la, cb)
        if cb == la:
            yield _lt(lb, ca)
    elif ra == "=" and rb == "=":
        shared = {la, ca} & {lb, cb}
        if shared:
            rest = ({la, ca} | {lb, cb}) - shared
            if len(rest) == 2:
                x, y = rest
                yield _eq(x, y)
    else:
        # substitution of equals into an ordering
        if ra == "=":
            eq_pts, (lt_l, lt_r) = (la, ca), (lb, cb)
        else:
            eq_pts, (lt_l, lt_r) = (lb, cb), (la, ca)
        p, q = eq_pts
        if lt_l == p:
            yield _lt(q, lt_r)
        elif lt_l == q:
            yield _lt(p, lt_r)
        if lt_r == p:
            yield _lt(lt_l, q)
        elif lt_r == q:
            yield _lt(lt_l, p)


def _tautology(a: Assertion) -> bool:
    return a[0] == "=" and a[1] == a[2]


def check_consistency(doc: Document, discipline: str = "fifo") -> ConsistencyResult:
    """Run the agenda/database closure loop over a document's TLINKs.

    discipline selects where derived assertions join the agenda: "fifo"
    appends (breadth-first), "lifo" prepends (depth-first). The verdict is
    the same either way.
    """
    if discipline not in ("fifo", "lifo"):
        raise ValueError(f"unknown agenda discipline: {discipline}")
    database, initial = document_assertions(doc)
    agenda = deque(a for a in initial if not _tautology(a))
    seen = set(database) | set(agenda)
    processed = 0
    while agenda:
        item = agenda.popleft()
        processed += 1
        # item cannot be its own conflict partner, so checking against the
        # full seen set is safe
        if _conflicts(item, seen):
            return ConsistencyResult(False, item, processed)
        derived = []
        for existing in database:
            for new in _combine(item, existing):
                if _tautology(new) or new in seen:
                    continue
                if new[0] == "<" and new[1] == new[2]:
                    return ConsistencyResult(False, new, processed)
                if _conflicts(new, seen):
                    return ConsistencyResult(False, new, processed)
                derived.append(new)
                seen.add(new)
        database.add(item)
        for new in derived:
            if discipline == "fifo":
                agenda.append(new)
            else:
                agenda.appendleft(new)
    return ConsistencyResult(True, None, processed)


def oracle_consistency(doc: Document) -> bool:
    """Independent verdict: union-find over equalities, cycle check over `<`.

    Used only by tests to validate check_consistency.
    """
    axioms, initial = document_assertions(doc)
    assertions = axioms | set(initial)

    parent: dict[Point, Point] = {}

    def find(p: Point) -> Point:
        parent.setdefault(p, p)
        root = p
        while parent[root] != root:
            root = parent[root]
        while parent[p] != root:
            parent[p], p = root, parent[p]
        return root

    for rel, left, right in assertions:
        if rel == "=":
            rl, rr = find(left), find(right)
            if rl != rr:
                parent[rl] = rr

    edges: dict[Point, set[Point]] = {}
    for rel, left, right in assertions:
        if rel == "<":
            rl, rr = find(left), find(right)
            if rl == rr:
                return False
            edges.setdefault(rl, set()).add(rr)
    try:
        graphlib.TopologicalSorter(edges).prepare()
    except graphlib.CycleError:
        return False
    return True
