"""Mapping between typed entities and their triple representation.

One declarative table drives both directions, so ``assemble_entities`` and
``emit_entities`` stay exact inverses.  Unknown vocabulary is never dropped:
whatever ``assemble_entities`` cannot map ends up in ``graph.residue``.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from decimal import Decimal, InvalidOperation
from typing import Iterable, Optional

from . import vocab
from .errors import MissingFieldError, TypeConflictError, ValueParseError
from .model import (
    Asset,
    CampaignReport,
    Candidacy,
    DirectRel,
    Election,
    EntityGraph,
    Group,
    Law,
    LegalCase,
    Membership,
    Organization,
    Participation,
    Person,
    Post,
    PropertyReport,
    Proposition,
    Recommendation,
    Referral,
    Session,
    TimeInterval,
    Transaction,
    TransactionObject,
    Vote,
    VoteEvent,
    Voter,
)
from .wire import (
    XSD_BOOLEAN,
    XSD_DATE,
    XSD_DECIMAL,
    XSD_STRING,
    BlankNode,
    Iri,
    Literal,
    Triple,
    TripleSet,
    id_for_term,
    term_for_id,
)

_RDF_TYPE = Iri(vocab.RDF_TYPE)


@dataclass(frozen=True)
class _Field:
    attr: str
    pred: str
    kind: str  # ref | concept | string | date | decimal | boolean
    required: bool = True
    multi: bool = False
    default: object = None


@dataclass(frozen=True)
class _TypeSpec:
    cls: type
    type_iri: Optional[str]  # None: transaction objects are typed by their kind
    fields: tuple
    interval_attr: Optional[str] = None
    interval_optional: bool = False
    participants: bool = False


_SPECS = (
    _TypeSpec(Person, vocab.FOAF_PERSON, (_Field("name", vocab.FOAF_NAME, "string"),)),
    _TypeSpec(
        Organization,
        vocab.ORG_ORGANIZATION,
        (
            _Field("name", vocab.FOAF_NAME, "string"),
            _Field("classification", vocab.ORG_CLASSIFICATION, "concept", required=False),
            _Field("parent", vocab.ORG_SUB_ORGANIZATION_OF, "ref", required=False),
        ),
    ),
    _TypeSpec(
        Group,
        vocab.FOAF_GROUP,
        (
            _Field("name", vocab.FOAF_NAME, "string"),
            _Field("members", vocab.FOAF_MEMBER, "ref", required=False, multi=True),
        ),
    ),
    _TypeSpec(
        Post,
        vocab.ORG_POST,
        (
            _Field("organization", vocab.ORG_POST_IN, "ref"),
            _Field("role", vocab.ORG_ROLE, "concept"),
            _Field("exclusive", vocab.POL_EXCLUSIVE, "boolean", required=False, default=True),
        ),
        interval_attr="interval",
    ),
    _TypeSpec(
        Membership,
        vocab.ORG_MEMBERSHIP,
        (
            _Field("person", vocab.ORG_MEMBER, "ref"),
            _Field("post", vocab.POL_HAS_POST, "ref"),
        ),
        interval_attr="interval",
    ),
    _TypeSpec(
        DirectRel,
        vocab.POL_DIRECT_REL,
        (
            _Field("subject", vocab.POL_REL_SOURCE, "ref"),
            _Field("object", vocab.POL_REL_TARGET, "ref"),
            _Field("relation", vocab.POL_DIRECT_REL_PROP, "concept"),
        ),
        interval_attr="interval",
        interval_optional=True,
    ),
    _TypeSpec(
        Referral,
        vocab.POL_REFERRAL,
        (
            _Field("referrer", vocab.POL_REFERRER, "ref"),
            _Field("referred", vocab.POL_REFERRED, "ref"),
            _Field("post", vocab.POL_POST_PROP, "ref"),
            _Field("date", vocab.DC_DATE, "date", required=False),
        ),
    ),
    _TypeSpec(
        Proposition,
        vocab.POL_PROPOSITION,
        (
            _Field("creators", vocab.DC_CREATOR, "ref", multi=True),
            _Field("title", vocab.DC_TITLE, "string", required=False),
        ),
    ),
    _TypeSpec(
        Law,
        vocab.POL_LAW,
        (
            _Field("proposition", vocab.POL_FROM_PROPOSITION, "ref"),
            _Field("enacted", vocab.POL_ENACTED_ON, "date"),
        ),
    ),
    _TypeSpec(Session, vocab.POL_SESSION, (_Field("date", vocab.DC_DATE, "date"),)),
    _TypeSpec(
        VoteEvent,
        vocab.POL_VOTE_EVENT,
        (
            _Field("session", vocab.POL_SESSION_PROP, "ref"),
            _Field("proposition", vocab.POL_PROPOSITION_PROP, "ref"),
            _Field("disposition", vocab.POL_DISPOSITION, "concept"),
            _Field("start", vocab.SCHEMA_START_DATE, "date"),
        ),
    ),
    _TypeSpec(
        Voter,
        vocab.POL_VOTER,
        (
            _Field("person", vocab.POL_PERSON_PROP, "ref"),
            _Field("party", vocab.POL_PARTY, "ref"),
        ),
    ),
    _TypeSpec(
        Vote,
        vocab.POL_VOTE,
        (
            _Field("vote_event", vocab.POL_VOTE_EVENT_PROP, "ref"),
            _Field("voter", vocab.POL_VOTER_PROP, "ref"),
            _Field("value", vocab.POL_VOTE_PROP, "concept"),
        ),
    ),
    _TypeSpec(
        Recommendation,
        vocab.POL_RECOMMENDATION,
        (
            _Field("issuer", vocab.POL_ISSUED_BY, "ref"),
            _Field("vote_event", vocab.POL_VOTE_EVENT_PROP, "ref"),
            _Field("recommended", vocab.POL_RECOMMENDS, "concept"),
        ),
    ),
    _TypeSpec(
        Election,
        vocab.POL_ELECTION,
        (
            _Field("date", vocab.DC_DATE, "date"),
            _Field("posts", vocab.POL_ELECTS_POST, "ref", multi=True),
        ),
    ),
    _TypeSpec(
        Candidacy,
        vocab.POL_CANDIDACY,
        (
            _Field("person", vocab.POL_CANDIDATE, "ref"),
            _Field("election", vocab.POL_ELECTION_PROP, "ref"),
            _Field("post", vocab.POL_POST_PROP, "ref"),
            _Field("campaign_report", vocab.POL_CAMPAIGN_REPORT_PROP, "ref", required=False),
            _Field("property_report", vocab.POL_PROPERTY_REPORT_PROP, "ref", required=False),
        ),
    ),
    _TypeSpec(
        TransactionObject,
        None,
        (_Field("description", vocab.SCHEMA_DESCRIPTION, "string", required=False, default=""),),
    ),
    _TypeSpec(
        Transaction,
        vocab.POL_TRANSACTION,
        (
            _Field("object", vocab.POL_TRANSACTION_OBJECT, "ref"),
            _Field("amount", vocab.POL_AMOUNT, "decimal"),
            _Field("currency", vocab.POL_CURRENCY, "string"),
            _Field("date", vocab.DC_DATE, "date"),
        ),
        participants=True,
    ),
    _TypeSpec(
        CampaignReport,
        vocab.POL_CAMPAIGN_REPORT,
        (
            _Field("candidacy", vocab.POL_CANDIDACY_PROP, "ref"),
            _Field("transactions", vocab.POL_TRANSACTION_PROP, "ref", required=False, multi=True),
        ),
    ),
    _TypeSpec(
        Asset,
        vocab.POL_ASSET,
        (
            _Field("owner", vocab.POL_OWNER, "ref"),
            _Field("description", vocab.SCHEMA_DESCRIPTION, "string", required=False, default=""),
            _Field("value", vocab.POL_VALUE, "decimal", required=False),
            _Field("acquired_via", vocab.POL_ACQUIRED_VIA, "ref", required=False),
        ),
    ),
    _TypeSpec(
        PropertyReport,
        vocab.POL_PROPERTY_REPORT,
        (
            _Field("candidacy", vocab.POL_CANDIDACY_PROP, "ref"),
            _Field("assets", vocab.POL_ASSET_PROP, "ref", required=False, multi=True),
        ),
    ),
    _TypeSpec(
        LegalCase,
        vocab.POL_LEGAL_CASE,
        (),
        interval_attr="interval",
        interval_optional=True,
        participants=True,
    ),
)

_SPEC_BY_CLS = {s.cls: s for s in _SPECS}

#: type-marker IRI -> (spec, transaction-object kind or None)
TYPE_MARKERS = {}
for _s in _SPECS:
    if _s.type_iri is not None:
        TYPE_MARKERS[_s.type_iri] = (_s, None)
TYPE_MARKERS[vocab.SCHEMA_PRODUCT] = (_SPEC_BY_CLS[TransactionObject], "product")
TYPE_MARKERS[vocab.SCHEMA_SERVICE] = (_SPEC_BY_CLS[TransactionObject], "service")


def _value_term(kind: str, value):
    if kind in ("ref", "concept"):
        return term_for_id(value)
    if kind == "string":
        return Literal(value)
    if kind == "date":
        return Literal(value.isoformat(), XSD_DATE)
    if kind == "decimal":
        return Literal(str(value), XSD_DECIMAL)
    if kind == "boolean":
        return Literal("true" if value else "false", XSD_BOOLEAN)
    raise AssertionError(kind)


def _term_value(kind: str, term, subject: str, attr: str):
    if kind in ("ref", "concept"):
        if isinstance(term, Literal):
            raise ValueParseError(subject, f"{attr}: expected an IRI or blank node, got a literal")
        return id_for_term(term)
    if not isinstance(term, Literal):
        raise ValueParseError(subject, f"{attr}: expected a literal")
    if kind == "string":
        if term.datatype != XSD_STRING:
            raise ValueParseError(subject, f"{attr}: expected a string literal, got {term.datatype}")
        return term.lexical
    if kind == "date":
        if term.datatype != XSD_DATE:
            raise ValueParseError(subject, f"{attr}: expected an {XSD_DATE} literal")
        try:
            return date.fromisoformat(term.lexical)
        except ValueError:
            raise ValueParseError(subject, f"{attr}: bad date literal {term.lexical!r}") from None
    if kind == "decimal":
        if term.datatype != XSD_DECIMAL:
            raise ValueParseError(subject, f"{attr}: expected an {XSD_DECIMAL} literal")
        try:
            return Decimal(term.lexical)
        except InvalidOperation:
            raise ValueParseError(subject, f"{attr}: bad decimal literal {term.lexical!r}") from None
    if kind == "boolean":
        if term.datatype != XSD_BOOLEAN or term.lexical not in ("true", "false"):
            raise ValueParseError(subject, f"{attr}: expected a boolean literal")
        return term.lexical == "true"
    raise AssertionError(kind)


def _participant_node_id(parent_id: str, index: int) -> str:
    if parent_id.startswith("_:"):
        return f"{parent_id}.p{index}"
    return f"{parent_id}/p{index}"


def triples_for_entity(entity) -> list:
    """The exact triples ``emit_entities`` produces for one entity."""
    spec = _SPEC_BY_CLS[type(entity)]
    subj = term_for_id(entity.id)
    if spec.type_iri is not None:
        type_iri = spec.type_iri
    else:
        type_iri = vocab.SCHEMA_PRODUCT if entity.kind == "product" else vocab.SCHEMA_SERVICE
    out = [Triple(subj, _RDF_TYPE, Iri(type_iri))]
    for fld in spec.fields:
        value = getattr(entity, fld.attr)
        if fld.multi:
            for v in sorted(value):
                out.append(Triple(subj, Iri(fld.pred), _value_term(fld.kind, v)))
        elif fld.required or value != fld.default:
            if value is not None:
                out.append(Triple(subj, Iri(fld.pred), _value_term(fld.kind, value)))
    if spec.interval_attr is not None:
        interval = getattr(entity, spec.interval_attr)
        if interval is not None:
            if interval.start is not None:
                out.append(
                    Triple(subj, Iri(vocab.SCHEMA_START_DATE), _value_term("date", interval.start))
                )
            if interval.end is not None:
                out.append(
                    Triple(subj, Iri(vocab.SCHEMA_END_DATE), _value_term("date", interval.end))
                )
    if spec.participants:
        for i, part in enumerate(entity.participants):
            node = term_for_id(_participant_node_id(entity.id, i))
            out.append(Triple(subj, Iri(vocab.POL_PARTICIPANT), node))
            out.append(Triple(node, Iri(vocab.POL_AGENT), term_for_id(part.agent)))
            out.append(Triple(node, Iri(vocab.POL_ROLE), term_for_id(part.role)))
    return out


def emit_entities(graph: EntityGraph) -> TripleSet:
    """Serialize every entity of the graph into the wire vocabulary."""
    ts = TripleSet()
    for entity in graph.entities():
        ts.update(triples_for_entity(entity))
    return ts


class _Assembler:
    def __init__(self, ts: TripleSet):
        self.by_subject: dict = {}  # subject id -> pred iri -> [(term, triple)]
        self.consumed: set = set()
        for t in ts:
            sid = id_for_term(t.subject)
            self.by_subject.setdefault(sid, {}).setdefault(t.predicate.value, []).append(
                (t.object, t)
            )

    def values(self, sid: str, pred: str) -> list:
        return self.by_subject.get(sid, {}).get(pred, [])

    def take(self, sid: str, pred: str) -> list:
        pairs = self.values(sid, pred)
        for _, t in pairs:
            self.consumed.add(t)
        return [term for term, _ in pairs]

    def take_single(self, sid: str, fld: _Field):
        terms = self.take(sid, fld.pred)
        if not terms:
            if fld.required:
                raise MissingFieldError(sid, f"missing mandatory field {fld.attr}")
            return fld.default
        if len(terms) > 1:
            raise ValueParseError(sid, f"{fld.attr}: {len(terms)} values for a single-valued field")
        return _term_value(fld.kind, terms[0], sid, fld.attr)

    def take_interval(self, sid: str, optional: bool):
        starts = self.take(sid, vocab.SCHEMA_START_DATE)
        ends = self.take(sid, vocab.SCHEMA_END_DATE)
        if len(starts) > 1 or len(ends) > 1:
            raise ValueParseError(sid, "multiple start or end dates")
        start = _term_value("date", starts[0], sid, "interval.start") if starts else None
        end = _term_value("date", ends[0], sid, "interval.end") if ends else None
        if start is None and end is None and optional:
            return None
        return TimeInterval(start, end)

    def take_participants(self, sid: str) -> list:
        nodes = self.take(sid, vocab.POL_PARTICIPANT)
        if not nodes:
            raise MissingFieldError(sid, "missing mandatory field participants")
        parts = []
        for node in nodes:
            if isinstance(node, Literal):
                raise ValueParseError(sid, "participant must be an IRI or blank node")
            nid = id_for_term(node)
            agents = self.take(nid, vocab.POL_AGENT)
            roles = self.take(nid, vocab.POL_ROLE)
            if len(agents) != 1:
                raise ValueParseError(sid, f"participant {nid}: expected exactly one agent")
            if len(roles) != 1:
                raise ValueParseError(sid, f"participant {nid}: expected exactly one role")
            parts.append(
                Participation(
                    _term_value("ref", agents[0], nid, "agent"),
                    _term_value("concept", roles[0], nid, "role"),
                )
            )
        return parts


def assemble_entities(ts: TripleSet, schemes=(), bindings: Optional[dict] = None) -> EntityGraph:
    """Build the typed entity graph a triple set describes.

    Every subject carrying a recognized type marker becomes exactly one
    entity; triples that do not take part in any entity land in the returned
    graph's ``residue`` (never silently dropped).  References to ids not
    described in the data are kept as-is, linked-data style; use
    ``graph.dangling_refs()`` to see them.
    """
    graph = EntityGraph(schemes, bindings or {})
    asm = _Assembler(ts)

    typed: dict = {}
    for t in ts:
        if t.predicate.value != vocab.RDF_TYPE or not isinstance(t.object, Iri):
            continue
        marker = TYPE_MARKERS.get(t.object.value)
        if marker is None:
            continue
        sid = id_for_term(t.subject)
        spec, kind = marker
        if sid in typed:
            prev_spec, prev_kind, _ = typed[sid]
            if prev_spec is not spec:
                raise TypeConflictError(
                    sid, f"typed both {prev_spec.cls.__name__} and {spec.cls.__name__}"
                )
            if prev_kind != kind:
                raise TypeConflictError(sid, f"typed both {prev_kind} and {kind}")
            continue
        typed[sid] = (spec, kind, t)

    entities = []
    for sid in sorted(typed):
        spec, kind, type_triple = typed[sid]
        asm.consumed.add(type_triple)
        kwargs = {"id": sid}
        if spec.cls is TransactionObject:
            kwargs["kind"] = kind
        for fld in spec.fields:
            if fld.multi:
                terms = asm.take(sid, fld.pred)
                if fld.required and not terms:
                    raise MissingFieldError(sid, f"missing mandatory field {fld.attr}")
                kwargs[fld.attr] = tuple(
                    _term_value(fld.kind, term, sid, fld.attr) for term in terms
                )
            else:
                kwargs[fld.attr] = asm.take_single(sid, fld)
        if spec.interval_attr is not None:
            kwargs[spec.interval_attr] = asm.take_interval(sid, spec.interval_optional)
        if spec.participants:
            kwargs["participants"] = tuple(asm.take_participants(sid))
        entities.append(spec.cls(**kwargs))

    graph.add_all(entities, allow_dangling=True)
    graph.residue = TripleSet(t for t in ts if t not in asm.consumed)
    return graph
