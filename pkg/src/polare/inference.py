"""Derives the agent-to-agent relation graph implicit in the entity data.

Each generator turns one entity pattern into typed edges: family ties,
shared organizations, referrals, shared transactions, shared legal cases
and contested posts.  ``materialize`` unions the enabled generators into a
deduplicated :class:`RelationGraph` with deterministic ordering.

Also hosts temporal affiliation resolution: which party was a person in on
a given date, and does that match what the voter rolls recorded.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from datetime import date
from typing import Iterable, Optional

from . import vocab
from .errors import AmbiguousAffiliationError, InvariantError, UnknownAgentError
from .model import (
    Candidacy,
    DirectRel,
    EntityGraph,
    LegalCase,
    Membership,
    Organization,
    Post,
    Referral,
    TimeInterval,
    Transaction,
    Vote,
    check_entity_id,
)
from .wire import (
    XSD_BOOLEAN,
    XSD_DATE,
    Iri,
    Literal,
    Triple,
    TripleSet,
    term_for_id,
)

FAMILY = "family"
CO_MEMBERSHIP = "co_membership"
REFERRAL = "referral"
CO_TRANSACTION = "co_transaction"
CO_CASE = "co_case"
CANDIDACY_POST = "candidacy_post"

ALL_KINDS = frozenset(
    (FAMILY, CO_MEMBERSHIP, REFERRAL, CO_TRANSACTION, CO_CASE, CANDIDACY_POST)
)


@dataclass(frozen=True)
class RelationEdge:
    """One derived relation between two agents.

    Undirected edges are canonicalized to (min-id, max-id) so each relation
    is stored and compared exactly once.
    """

    a: str
    b: str
    kind: str
    detail: str
    evidence: tuple
    interval: Optional[TimeInterval] = None
    directed: bool = False

    def __post_init__(self):
        check_entity_id(self.a, "RelationEdge.a")
        check_entity_id(self.b, "RelationEdge.b")
        if self.a == self.b:
            raise InvariantError("relation edge endpoints must differ")
        if self.kind not in ALL_KINDS:
            raise InvariantError(f"unknown edge kind {self.kind!r}")
        evidence = tuple(sorted(self.evidence))
        if not evidence:
            raise InvariantError("relation edge needs at least one evidence entity")
        object.__setattr__(self, "evidence", evidence)
        if not self.directed and self.a > self.b:
            a, b = self.a, self.b
            object.__setattr__(self, "a", b)
            object.__setattr__(self, "b", a)

    @property
    def key(self) -> tuple:
        return (self.a, self.b, self.kind, self.detail, self.evidence)

    def in_effect(self, d: Optional[date]) -> bool:
        if d is None or self.interval is None:
            return True
        return self.interval.in_effect(d)

    def touches(self, agent: str) -> bool:
        return agent in (self.a, self.b)

    def other(self, agent: str) -> str:
        if agent == self.a:
            return self.b
        if agent == self.b:
            return self.a
        raise ValueError(f"{agent} is not an endpoint of this edge")


class RelationGraph:
    """Deduplicated set of relation edges with an adjacency index."""

    def __init__(self, edges: Iterable = ()):
        self._edges: dict = {}  # key -> RelationEdge
        self._adjacency: dict = {}  # agent -> [edge]
        for e in edges:
            self.add(e)

    def add(self, edge: RelationEdge) -> bool:
        if edge.key in self._edges:
            return False
        self._edges[edge.key] = edge
        self._adjacency.setdefault(edge.a, []).append(edge)
        self._adjacency.setdefault(edge.b, []).append(edge)
        return True

    def edges(self) -> list:
        return sorted(self._edges.values(), key=lambda e: e.key)

    def edges_touching(self, agent: str) -> list:
        return sorted(self._adjacency.get(agent, []), key=lambda e: e.key)

    def agents(self) -> list:
        return sorted(self._adjacency)

    def __len__(self) -> int:
        return len(self._edges)

    def __contains__(self, edge) -> bool:
        return isinstance(edge, RelationEdge) and edge.key in self._edges

    def __eq__(self, other) -> bool:
        if not isinstance(other, RelationGraph):
            return NotImplemented
        return set(self._edges) == set(other._edges)

    def __repr__(self) -> str:
        return f"RelationGraph({len(self._edges)} edges, {len(self._adjacency)} agents)"

    def filtered(self, kinds=None, at_date: Optional[date] = None) -> "RelationGraph":
        out = RelationGraph()
        for e in self._edges.values():
            if kinds is not None and e.kind not in kinds:
                continue
            if not e.in_effect(at_date):
                continue
            out.add(e)
        return out


@dataclass(frozen=True)
class InferenceConfig:
    require_overlap: bool = True
    kinds: Optional[frozenset] = None  # None = every kind
    party_classification: Optional[str] = None

    def __post_init__(self):
        if self.kinds is not None:
            kinds = frozenset(self.kinds)
            unknown = kinds - ALL_KINDS
            if unknown:
                raise ValueError(f"unknown edge kinds: {sorted(unknown)}")
            object.__setattr__(self, "kinds", kinds)

    def enabled(self, kind: str) -> bool:
        return self.kinds is None or kind in self.kinds


# -- temporal affiliation ----------------------------------------------------


def affiliation_at(
    graph: EntityGraph,
    person: str,
    d: date,
    org_filter: Optional[str] = None,
) -> Optional[str]:
    """The organization the person belonged to on day d, or None.

    With ``org_filter`` only organizations carrying that classification
    concept count.  More than one membership in effect on d is refused as
    ambiguous rather than silently picking one.
    """
    if not graph.is_agent(person):
        raise UnknownAgentError(f"no person {person} in graph")
    hits = []
    for m in graph.of_type(Membership):
        if m.person != person:
            continue
        post = graph.get(m.post)
        if not isinstance(post, Post):
            continue
        if org_filter is not None:
            org = graph.get(post.organization)
            if not isinstance(org, Organization) or org.classification != org_filter:
                continue
        if m.interval.in_effect(d):
            hits.append((m, post.organization))
    if not hits:
        return None
    if len(hits) > 1:
        raise AmbiguousAffiliationError(person, d, sorted({org for _, org in hits}))
    return hits[0][1]


@dataclass(frozen=True)
class VoterCheck:
    """One vote whose recorded party disagrees with (or cannot be resolved
    against) the memberships in effect at the vote event's start date."""

    vote: str
    recorded: str
    inferred: Optional[str]
    reason: str  # mismatch | no-affiliation | ambiguous


def check_voter_consistency(
    graph: EntityGraph, party_classification: Optional[str] = None
) -> list:
    """Compare every vote's recorded party with the interval-derived one."""
    out = []
    for vote in graph.of_type(Vote):
        voter = graph.get(vote.voter)
        if voter is None:
            continue
        event = graph.get(vote.vote_event)
        if event is None:
            continue
        try:
            inferred = affiliation_at(graph, voter.person, event.start, party_classification)
        except UnknownAgentError:
            continue
        except AmbiguousAffiliationError:
            out.append(VoterCheck(vote.id, voter.party, None, "ambiguous"))
            continue
        if inferred is None:
            out.append(VoterCheck(vote.id, voter.party, None, "no-affiliation"))
        elif inferred != voter.party:
            out.append(VoterCheck(vote.id, voter.party, inferred, "mismatch"))
    return sorted(out, key=lambda c: c.vote)


# -- edge generators ---------------------------------------------------------


def family_edges(graph: EntityGraph) -> list:
    """One edge per direct relation; directed unless the concept says the
    relation is symmetric."""
    out = []
    for rel in graph.of_type(DirectRel):
        concept = graph.find_concept(rel.relation)
        symmetric = concept.symmetric if concept is not None else False
        out.append(
            RelationEdge(
                rel.subject,
                rel.object,
                FAMILY,
                rel.relation,
                (rel.id,),
                rel.interval,
                directed=not symmetric,
            )
        )
    return out


def co_membership_edges(graph: EntityGraph, require_overlap: bool = True) -> list:
    """Persons holding posts in the same organization, one edge per
    qualifying membership pair; with ``require_overlap`` the periods must
    share a day and the edge carries their intersection."""
    by_org: dict = {}
    for m in graph.of_type(Membership):
        post = graph.get(m.post)
        if not isinstance(post, Post):
            continue
        by_org.setdefault(post.organization, []).append(m)
    out = []
    for org, ms in sorted(by_org.items()):
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                m1, m2 = ms[i], ms[j]
                if m1.person == m2.person:
                    continue
                interval = None
                if require_overlap:
                    interval = m1.interval.intersection(m2.interval)
                    if interval is None:
                        continue
                out.append(
                    RelationEdge(
                        m1.person,
                        m2.person,
                        CO_MEMBERSHIP,
                        org,
                        (m1.id, m2.id),
                        interval,
                    )
                )
    return out


def referral_edges(graph: EntityGraph) -> list:
    """Who placed whom: a directed edge per referral, detailed by post."""
    out = []
    for r in graph.of_type(Referral):
        interval = TimeInterval(r.date, r.date) if r.date is not None else None
        out.append(
            RelationEdge(
                r.referrer, r.referred, REFERRAL, r.post, (r.id,), interval, directed=True
            )
        )
    return out


def _pair_edges(entity_id: str, participants, kind: str, interval) -> list:
    agents = sorted({p.agent for p in participants})
    out = []
    for i in range(len(agents)):
        for j in range(i + 1, len(agents)):
            out.append(
                RelationEdge(agents[i], agents[j], kind, entity_id, (entity_id,), interval)
            )
    return out


def co_transaction_edges(graph: EntityGraph) -> list:
    """All pairs of distinct agents in one transaction; its date rides along
    as a one-day interval."""
    out = []
    for t in graph.of_type(Transaction):
        out.extend(
            _pair_edges(t.id, t.participants, CO_TRANSACTION, TimeInterval(t.date, t.date))
        )
    return out


def co_case_edges(graph: EntityGraph) -> list:
    """All pairs of distinct agents involved in one legal case, any roles."""
    out = []
    for c in graph.of_type(LegalCase):
        out.extend(_pair_edges(c.id, c.participants, CO_CASE, c.interval))
    return out


def candidacy_post_edges(graph: EntityGraph) -> list:
    """Candidate to the organization whose post is contested."""
    out = []
    for c in graph.of_type(Candidacy):
        post = graph.get(c.post)
        if not isinstance(post, Post):
            continue
        if c.person == post.organization:
            continue
        out.append(
            RelationEdge(
                c.person,
                post.organization,
                CANDIDACY_POST,
                c.post,
                (c.id,),
                directed=True,
            )
        )
    return out


def materialize(graph: EntityGraph, cfg: Optional[InferenceConfig] = None) -> RelationGraph:
    """Union of every enabled generator, deduplicated."""
    cfg = cfg or InferenceConfig()
    rg = RelationGraph()
    if cfg.enabled(FAMILY):
        for e in family_edges(graph):
            rg.add(e)
    if cfg.enabled(CO_MEMBERSHIP):
        for e in co_membership_edges(graph, cfg.require_overlap):
            rg.add(e)
    if cfg.enabled(REFERRAL):
        for e in referral_edges(graph):
            rg.add(e)
    if cfg.enabled(CO_TRANSACTION):
        for e in co_transaction_edges(graph):
            rg.add(e)
    if cfg.enabled(CO_CASE):
        for e in co_case_edges(graph):
            rg.add(e)
    if cfg.enabled(CANDIDACY_POST):
        for e in candidacy_post_edges(graph):
            rg.add(e)
    return rg


# -- exports -----------------------------------------------------------------


def edge_to_dict(edge: RelationEdge) -> dict:
    interval = None
    if edge.interval is not None:
        interval = {
            "start": edge.interval.start.isoformat() if edge.interval.start else None,
            "end": edge.interval.end.isoformat() if edge.interval.end else None,
        }
    return {
        "a": edge.a,
        "b": edge.b,
        "kind": edge.kind,
        "detail": edge.detail,
        "directed": edge.directed,
        "interval": interval,
        "evidence": list(edge.evidence),
    }


def edges_to_jsonl(rg: RelationGraph) -> str:
    """One JSON object per edge, deterministic order."""
    return "".join(
        json.dumps(edge_to_dict(e), sort_keys=True, separators=(",", ":")) + "\n"
        for e in rg.edges()
    )


def _edge_iri(edge: RelationEdge) -> str:
    digest = hashlib.sha256("\x00".join(map(str, edge.key)).encode("utf-8")).hexdigest()
    return f"urn:edge:{digest[:20]}"


def edges_to_triples(rg: RelationGraph) -> TripleSet:
    """The relation graph in the wire format under the derived-relation
    vocabulary, each edge as a content-addressed node."""
    ts = TripleSet()
    rdf_type = Iri(vocab.RDF_TYPE)
    for e in rg.edges():
        node = Iri(_edge_iri(e))
        ts.add(Triple(node, rdf_type, Iri(vocab.POLREL_EDGE)))
        ts.add(Triple(node, Iri(vocab.POLREL_FROM), term_for_id(e.a)))
        ts.add(Triple(node, Iri(vocab.POLREL_TO), term_for_id(e.b)))
        ts.add(Triple(node, Iri(vocab.POLREL_KIND), Literal(e.kind)))
        ts.add(Triple(node, Iri(vocab.POLREL_DETAIL), term_for_id(e.detail)))
        ts.add(
            Triple(
                node,
                Iri(vocab.POLREL_DIRECTED),
                Literal("true" if e.directed else "false", XSD_BOOLEAN),
            )
        )
        for ev in e.evidence:
            ts.add(Triple(node, Iri(vocab.POLREL_EVIDENCE), term_for_id(ev)))
        if e.interval is not None:
            if e.interval.start is not None:
                ts.add(
                    Triple(
                        node,
                        Iri(vocab.SCHEMA_START_DATE),
                        Literal(e.interval.start.isoformat(), XSD_DATE),
                    )
                )
            if e.interval.end is not None:
                ts.add(
                    Triple(
                        node,
                        Iri(vocab.SCHEMA_END_DATE),
                        Literal(e.interval.end.isoformat(), XSD_DATE),
                    )
                )
    return ts
