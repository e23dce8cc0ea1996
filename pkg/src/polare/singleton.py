"""Rewriting between reified memberships and singleton-property form.

In singleton form each membership disappears as a node and becomes a
one-off predicate: ``(person, p_m, post)`` plus a declaration
``(p_m, singletonPropertyOf, occupies)``, with the membership's dates
attached to ``p_m``.  The rewriting also emits the OWL bookkeeping that
linked-data tooling expects around such predicates (``owl:NamedIndividual``
and ``owl:ObjectProperty`` typings); ``from_singleton`` consumes that
bookkeeping again instead of treating it as data.
"""

from __future__ import annotations

from datetime import date
from typing import Optional

from . import vocab
from .errors import AmbiguousSingletonError, OrphanSingletonError, ValueParseError
from .mapping import assemble_entities, triples_for_entity
from .model import EntityGraph, Membership, TimeInterval
from .wire import XSD_DATE, Iri, Literal, Triple, TripleSet, id_for_term, term_for_id

SINGLETON_SUFFIX = "_sp"

_RDF_TYPE = Iri(vocab.RDF_TYPE)
_NAMED_INDIVIDUAL = Iri(vocab.OWL_NAMED_INDIVIDUAL)
_OBJECT_PROPERTY = Iri(vocab.OWL_OBJECT_PROPERTY)
_MEMBERSHIP_TYPE = Iri(vocab.ORG_MEMBERSHIP)
_OCCUPIES = Iri(vocab.POL_OCCUPIES)
_SPO = Iri(vocab.POL_SINGLETON_PROPERTY_OF)


def singleton_iri(membership_id: str) -> str:
    return membership_id + SINGLETON_SUFFIX


def to_singleton(graph: EntityGraph) -> TripleSet:
    """Emit the graph with every membership rewritten to singleton form.

    All other entities serialize exactly as ``emit_entities`` would, and
    unmapped input triples (``graph.residue``) are carried through.
    """
    ts = TripleSet()
    memberships = []
    for entity in graph.entities():
        if isinstance(entity, Membership):
            memberships.append(entity)
        else:
            ts.update(triples_for_entity(entity))
    for m in memberships:
        if m.id.startswith("_:"):
            raise ValueParseError(m.id, "a blank-node membership cannot become a predicate")
        p_m = Iri(singleton_iri(m.id))
        person = term_for_id(m.person)
        ts.add(Triple(person, _RDF_TYPE, _NAMED_INDIVIDUAL))
        ts.add(Triple(person, p_m, term_for_id(m.post)))
        ts.add(Triple(p_m, _RDF_TYPE, _NAMED_INDIVIDUAL))
        ts.add(Triple(p_m, _RDF_TYPE, _OBJECT_PROPERTY))
        ts.add(Triple(p_m, _RDF_TYPE, _MEMBERSHIP_TYPE))
        if m.interval.start is not None:
            ts.add(
                Triple(
                    p_m,
                    Iri(vocab.SCHEMA_START_DATE),
                    Literal(m.interval.start.isoformat(), XSD_DATE),
                )
            )
        if m.interval.end is not None:
            ts.add(
                Triple(
                    p_m,
                    Iri(vocab.SCHEMA_END_DATE),
                    Literal(m.interval.end.isoformat(), XSD_DATE),
                )
            )
        ts.add(Triple(p_m, _SPO, _OCCUPIES))
    if memberships:
        ts.add(Triple(_OCCUPIES, _RDF_TYPE, _NAMED_INDIVIDUAL))
        ts.add(Triple(_OCCUPIES, _RDF_TYPE, _OBJECT_PROPERTY))
    ts.update(getattr(graph, "residue", ()))
    return ts


def _interval_from(pairs, subject: str) -> TimeInterval:
    starts = [t for t in pairs if t.predicate.value == vocab.SCHEMA_START_DATE]
    ends = [t for t in pairs if t.predicate.value == vocab.SCHEMA_END_DATE]
    if len(starts) > 1 or len(ends) > 1:
        raise ValueParseError(subject, "multiple start or end dates")

    def as_date(t: Triple):
        obj = t.object
        if not isinstance(obj, Literal) or obj.datatype != XSD_DATE:
            raise ValueParseError(subject, f"expected an {XSD_DATE} literal")
        try:
            return date.fromisoformat(obj.lexical)
        except ValueError:
            raise ValueParseError(subject, f"bad date literal {obj.lexical!r}") from None

    return TimeInterval(
        as_date(starts[0]) if starts else None,
        as_date(ends[0]) if ends else None,
    )


def from_singleton(ts: TripleSet, schemes=(), bindings: Optional[dict] = None) -> EntityGraph:
    """Assemble a graph from singleton form, materializing memberships.

    Every singleton property must be used in exactly one statement triple:
    none raises :class:`OrphanSingletonError`, several raise
    :class:`AmbiguousSingletonError`.  Singletons whose base is not the
    membership predicate are left untouched in the residue.
    """
    declarations: dict = {}
    for t in ts:
        if t.predicate != _SPO:
            continue
        sid = id_for_term(t.subject)
        if isinstance(t.object, Literal):
            raise ValueParseError(sid, "singleton base must be an IRI")
        if sid in declarations and declarations[sid][0] != t.object:
            raise AmbiguousSingletonError(sid, "declared with more than one base property")
        declarations[sid] = (t.object, t)

    statements: dict = {sid: [] for sid in declarations}
    for t in ts:
        if t.predicate.value in statements:
            statements[t.predicate.value].append(t)

    consumed = set()
    memberships = []
    occupies_seen = False
    for sid in sorted(declarations):
        base, decl = declarations[sid]
        uses = statements[sid]
        if not uses:
            raise OrphanSingletonError(sid, "singleton property never used in a statement")
        if len(uses) > 1:
            raise AmbiguousSingletonError(sid, f"singleton property used in {len(uses)} statements")
        if base != _OCCUPIES:
            continue
        occupies_seen = True
        statement = uses[0]
        if isinstance(statement.object, Literal):
            raise ValueParseError(sid, "membership statement object must be an IRI or blank node")
        person_id = id_for_term(statement.subject)
        post_id = id_for_term(statement.object)
        own = [t for t in ts if id_for_term(t.subject) == sid]
        interval = _interval_from(own, sid)
        # invert the deterministic minting rule so a full rewrite cycle is the
        # identity; foreign singleton names are kept as-is
        mid = sid[: -len(SINGLETON_SUFFIX)] if sid.endswith(SINGLETON_SUFFIX) else sid
        memberships.append(Membership(mid, person_id, post_id, interval))
        consumed.add(statement)
        consumed.add(decl)
        for t in own:
            if t.predicate.value in (vocab.SCHEMA_START_DATE, vocab.SCHEMA_END_DATE):
                consumed.add(t)
            elif t.predicate == _RDF_TYPE and t.object in (
                _NAMED_INDIVIDUAL,
                _OBJECT_PROPERTY,
                _MEMBERSHIP_TYPE,
            ):
                consumed.add(t)
        consumed.add(Triple(statement.subject, _RDF_TYPE, _NAMED_INDIVIDUAL))
    if occupies_seen:
        consumed.add(Triple(_OCCUPIES, _RDF_TYPE, _NAMED_INDIVIDUAL))
        consumed.add(Triple(_OCCUPIES, _RDF_TYPE, _OBJECT_PROPERTY))

    remaining = TripleSet(t for t in ts if t not in consumed)
    graph = assemble_entities(remaining, schemes, bindings)
    graph.add_all(memberships, allow_dangling=True)
    return graph
