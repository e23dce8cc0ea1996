"""Triple wire format: a strict N-Triples subset with an out-of-band prefix
map, plus canonical serialization.

Grammar (one statement per line)::

    STATEMENT := SUBJ WS PRED WS OBJ WS? "."
    SUBJ      := IRIREF | BLANK | PNAME
    PRED      := IRIREF | PNAME
    OBJ       := IRIREF | BLANK | LITERAL | PNAME
    IRIREF    := "<" non-space chars ">"
    BLANK     := "_:" label
    LITERAL   := '"' escaped chars '"' ("^^" (IRIREF | PNAME))?

Lines starting with ``#`` are comments.  PNAMEs (``foaf:name``, ``:John``)
are an input convenience expanded through the supplied prefix map; a PNAME
local part cannot end with ``.``, since a trailing dot reads as the
statement terminator.  Canonical serialization emits full IRIs only, one
sorted statement per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .errors import UnknownPrefixError, WireParseError

XSD = "http://www.w3.org/2001/XMLSchema#"
XSD_STRING = XSD + "string"
XSD_DATE = XSD + "date"
XSD_DECIMAL = XSD + "decimal"
XSD_BOOLEAN = XSD + "boolean"


@dataclass(frozen=True)
class Iri:
    value: str


@dataclass(frozen=True)
class BlankNode:
    label: str


@dataclass(frozen=True)
class Literal:
    lexical: str
    datatype: str = XSD_STRING


@dataclass(frozen=True)
class Triple:
    subject: object  # Iri | BlankNode
    predicate: Iri
    object: object  # Iri | BlankNode | Literal


def term_for_id(eid: str):
    """Entity id string -> subject/object term."""
    return BlankNode(eid[2:]) if eid.startswith("_:") else Iri(eid)


def id_for_term(term) -> str:
    """Subject/object term -> entity id string; literals have no id."""
    if isinstance(term, Iri):
        return term.value
    if isinstance(term, BlankNode):
        return "_:" + term.label
    raise ValueError(f"term has no entity id: {term!r}")


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "'": "'", "n": "\n", "r": "\r", "t": "\t", "b": "\b", "f": "\f"}


def render_term(term) -> str:
    if isinstance(term, Iri):
        return f"<{term.value}>"
    if isinstance(term, BlankNode):
        return f"_:{term.label}"
    if isinstance(term, Literal):
        body = "".join(_ESCAPES.get(c, c) for c in term.lexical)
        if term.datatype == XSD_STRING:
            return f'"{body}"'
        return f'"{body}"^^<{term.datatype}>'
    raise TypeError(f"not a term: {term!r}")


def render_triple(t: Triple) -> str:
    return f"{render_term(t.subject)} {render_term(t.predicate)} {render_term(t.object)} ."


class TripleSet:
    """Insertion-ordered collection of triples with set semantics: no
    duplicates, equality ignores order."""

    __slots__ = ("_items",)

    def __init__(self, triples: Iterable[Triple] = ()):
        self._items: dict = {}
        for t in triples:
            self.add(t)

    def add(self, t: Triple) -> bool:
        if t in self._items:
            return False
        self._items[t] = None
        return True

    def update(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add(t)

    def difference(self, other: Iterable[Triple]) -> "TripleSet":
        drop = set(other)
        return TripleSet(t for t in self._items if t not in drop)

    def __contains__(self, t: Triple) -> bool:
        return t in self._items

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TripleSet):
            return NotImplemented
        return set(self._items) == set(other._items)

    def __repr__(self) -> str:
        return f"TripleSet({len(self._items)} triples)"

    def sorted_triples(self) -> list:
        return sorted(
            self._items,
            key=lambda t: (render_term(t.subject), render_term(t.predicate), render_term(t.object)),
        )


def serialize_triples(ts: TripleSet) -> str:
    """Canonical text form: full IRIs, one statement per line, lines sorted
    by (subject, predicate, object); ``parse_triples`` inverts it exactly."""
    lines = [render_triple(t) for t in ts.sorted_triples()]
    return "".join(line + "\n" for line in lines)


class _LineScanner:
    """Cursor over one statement line, reporting 1-based columns."""

    def __init__(self, text: str, line_no: int, prefixes: dict):
        self.text = text
        self.pos = 0
        self.line = line_no
        self.prefixes = prefixes

    def error(self, message: str, column: Optional[int] = None):
        raise WireParseError(self.line, self.pos + 1 if column is None else column, message)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> int:
        skipped = 0
        while not self.at_end() and self.text[self.pos] in " \t":
            self.pos += 1
            skipped += 1
        return skipped

    def scan_iriref(self) -> str:
        start = self.pos
        self.pos += 1  # consume "<"
        chars = []
        while True:
            if self.at_end():
                self.error("unterminated IRI", column=start + 1)
            c = self.text[self.pos]
            self.pos += 1
            if c == ">":
                break
            if c in " \t<":
                self.error(f"character {c!r} not allowed inside IRI", column=self.pos)
            chars.append(c)
        if not chars:
            self.error("empty IRI", column=start + 1)
        return "".join(chars)

    def scan_blank(self) -> BlankNode:
        start = self.pos
        self.pos += 2  # consume "_:"
        label_start = self.pos
        while not self.at_end() and (self.text[self.pos].isalnum() or self.text[self.pos] in "_.-"):
            self.pos += 1
        label = self.text[label_start : self.pos]
        # a trailing dot reads as the statement terminator, not label content
        while label.endswith("."):
            label = label[:-1]
            self.pos -= 1
        if not label:
            self.error("empty blank node label", column=start + 1)
        return BlankNode(label)

    def scan_pname_iri(self) -> str:
        """Scan a prefixed name and expand it through the prefix map."""
        start = self.pos
        while not self.at_end() and self.text[self.pos] not in " \t":
            self.pos += 1
        token = self.text[start : self.pos]
        while token.endswith("."):
            token = token[:-1]
            self.pos -= 1
        if ":" not in token:
            self.error(f"expected an IRI, blank node or literal, got {token!r}", column=start + 1)
        prefix, _, local = token.partition(":")
        if prefix not in self.prefixes:
            raise UnknownPrefixError(self.line, start + 1, prefix)
        return self.prefixes[prefix] + local

    def scan_literal(self) -> Literal:
        start = self.pos
        self.pos += 1  # consume opening quote
        chars = []
        while True:
            if self.at_end():
                self.error("unterminated literal", column=start + 1)
            c = self.text[self.pos]
            self.pos += 1
            if c == '"':
                break
            if c != "\\":
                chars.append(c)
                continue
            if self.at_end():
                self.error("dangling escape at end of line")
            e = self.text[self.pos]
            self.pos += 1
            if e in _UNESCAPES:
                chars.append(_UNESCAPES[e])
            elif e in "uU":
                width = 4 if e == "u" else 8
                hexpart = self.text[self.pos : self.pos + width]
                if len(hexpart) < width or any(h not in "0123456789abcdefABCDEF" for h in hexpart):
                    self.error(f"bad \\{e} escape")
                chars.append(chr(int(hexpart, 16)))
                self.pos += width
            else:
                self.error(f"unknown escape \\{e}")
        datatype = XSD_STRING
        if self.text[self.pos : self.pos + 2] == "^^":
            self.pos += 2
            if self.peek() == "<":
                datatype = self.scan_iriref()
            else:
                datatype = self.scan_pname_iri()
        return Literal("".join(chars), datatype)

    def scan_subject(self):
        if self.peek() == "<":
            return Iri(self.scan_iriref())
        if self.text[self.pos : self.pos + 2] == "_:":
            return self.scan_blank()
        if self.peek() == '"':
            self.error("literal not allowed as subject")
        return Iri(self.scan_pname_iri())

    def scan_predicate(self) -> Iri:
        if self.peek() == "<":
            return Iri(self.scan_iriref())
        if self.text[self.pos : self.pos + 2] == "_:" or self.peek() == '"':
            self.error("predicate must be an IRI")
        return Iri(self.scan_pname_iri())

    def scan_object(self):
        if self.peek() == "<":
            return Iri(self.scan_iriref())
        if self.text[self.pos : self.pos + 2] == "_:":
            return self.scan_blank()
        if self.peek() == '"':
            return self.scan_literal()
        return Iri(self.scan_pname_iri())


def parse_triples(text: str, prefixes: Optional[dict] = None) -> TripleSet:
    """Parse wire-format text into a :class:`TripleSet`, expanding prefixed
    names through ``prefixes``; raises :class:`WireParseError` with the line
    and column of the first problem."""
    prefixes = prefixes or {}
    out = TripleSet()
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        sc = _LineScanner(line, line_no, prefixes)
        sc.skip_ws()
        if sc.at_end() or sc.peek() == "#":
            continue
        subject = sc.scan_subject()
        if not sc.skip_ws():
            sc.error("expected whitespace after subject")
        predicate = sc.scan_predicate()
        if not sc.skip_ws():
            sc.error("expected whitespace after predicate")
        obj = sc.scan_object()
        sc.skip_ws()
        if sc.peek() != ".":
            sc.error("expected '.' terminating the statement")
        sc.pos += 1
        sc.skip_ws()
        if not sc.at_end():
            sc.error("unexpected content after '.'")
        out.add(Triple(subject, predicate, obj))
    return out
