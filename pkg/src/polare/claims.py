"""Claims and provenance: every triple enters the store as part of a claim.

Ownership is first-writer-wins.  A triple belongs to the claim that first
asserted it; later claims containing the same triple record it as a
corroboration instead of re-owning it.  Views can then be restricted to the
claims of accepted asserters and fed to assembly and validation like any
other triple set.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional, Union

from .errors import ClaimError, EmptyAssertionError, StoreError, WireParseError
from .wire import Triple, TripleSet, parse_triples, render_triple, serialize_triples

Pathish = Union[str, Path]


def _canonical_timestamp(value: datetime) -> datetime:
    if value.tzinfo is None:
        value = value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc)


def parse_timestamp(text: str) -> datetime:
    """RFC-3339 date-time, normalized to UTC."""
    try:
        return _canonical_timestamp(datetime.fromisoformat(text.replace("Z", "+00:00")))
    except ValueError as e:
        raise ClaimError(f"bad timestamp {text!r}: {e}") from None


@dataclass(frozen=True)
class Claim:
    """One assertion event: who said what, where, when.

    The id is content-addressed over (assertion, asserter, timestamp), so
    re-reading the same claim file yields the same ids.
    """

    asserter: str
    source: str
    timestamp: datetime
    assertion: tuple
    id: str = field(init=False, compare=False)

    def __post_init__(self):
        if not self.asserter:
            raise ClaimError("claim asserter must be non-empty")
        triples = TripleSet(self.assertion)
        if len(triples) == 0:
            raise EmptyAssertionError("claim assertion must contain at least one triple")
        object.__setattr__(self, "assertion", tuple(triples.sorted_triples()))
        object.__setattr__(self, "timestamp", _canonical_timestamp(self.timestamp))
        digest = hashlib.sha256()
        digest.update(serialize_triples(triples).encode("utf-8"))
        digest.update(b"\x00" + self.asserter.encode("utf-8"))
        digest.update(b"\x00" + self.timestamp.isoformat().encode("utf-8"))
        object.__setattr__(self, "id", "urn:claim:" + digest.hexdigest())

    def triples(self) -> TripleSet:
        return TripleSet(self.assertion)


@dataclass(frozen=True)
class Provenance:
    owner: Optional[Claim]
    corroborations: tuple


class ClaimStore:
    """Append-only collection of claims with a triple ownership index.

    Single writer: ownership depends on ingest order, so concurrent ingests
    must be serialized by the caller.  Reads never mutate.
    """

    def __init__(self):
        self._claims: dict = {}  # claim id -> Claim, in ingest order
        self._owner: dict = {}  # Triple -> claim id
        self._corroborators: dict = {}  # Triple -> [claim id]
        self._owned: dict = {}  # claim id -> tuple of Triple
        self._corroborated: dict = {}  # claim id -> tuple of Triple

    def __len__(self) -> int:
        return len(self._claims)

    def __contains__(self, claim_id: str) -> bool:
        return claim_id in self._claims

    def claims(self) -> list:
        """All claims in ingest order."""
        return list(self._claims.values())

    def claim(self, claim_id: str) -> Claim:
        if claim_id not in self._claims:
            raise ClaimError(f"no claim {claim_id}")
        return self._claims[claim_id]

    def asserters(self) -> list:
        return sorted({c.asserter for c in self._claims.values()})

    def ingest(self, assertion, asserter: str, source: str, timestamp: datetime) -> str:
        """Store one claim; returns its id.

        New triples become owned by this claim; triples already owned by an
        earlier claim are recorded as corroborations.  Re-ingesting a claim
        with identical content (same assertion, asserter and timestamp) is a
        no-op returning the existing id.
        """
        claim = Claim(asserter, source, timestamp, tuple(TripleSet(assertion)))
        if claim.id in self._claims:
            return claim.id
        owned = []
        corroborated = []
        for t in claim.assertion:
            if t in self._owner:
                self._corroborators.setdefault(t, []).append(claim.id)
                corroborated.append(t)
            else:
                self._owner[t] = claim.id
                owned.append(t)
        self._claims[claim.id] = claim
        self._owned[claim.id] = tuple(owned)
        self._corroborated[claim.id] = tuple(corroborated)
        return claim.id

    def owned_triples(self, claim_id: str) -> tuple:
        self.claim(claim_id)
        return self._owned[claim_id]

    def corroborated_triples(self, claim_id: str) -> tuple:
        self.claim(claim_id)
        return self._corroborated[claim_id]

    def provenance_of(self, t: Triple) -> Provenance:
        """Owner claim plus corroborating claims; empty for unseen triples."""
        owner_id = self._owner.get(t)
        if owner_id is None:
            return Provenance(None, ())
        witnesses = tuple(self._claims[cid] for cid in self._corroborators.get(t, []))
        return Provenance(self._claims[owner_id], witnesses)

    def triples(self) -> TripleSet:
        """Every distinct triple across all claims, first-assertion order."""
        ts = TripleSet()
        for claim in self._claims.values():
            ts.update(claim.assertion)
        return ts

    def view_by_asserters(self, accepted: Iterable) -> TripleSet:
        """Union of the assertions of every claim by an accepted asserter."""
        accepted = set(accepted)
        ts = TripleSet()
        for claim in self._claims.values():
            if claim.asserter in accepted:
                ts.update(claim.assertion)
        return ts


def ingest_claim(store: ClaimStore, assertion, asserter, source, timestamp) -> str:
    return store.ingest(assertion, asserter, source, timestamp)


def provenance_of(store: ClaimStore, t: Triple) -> Provenance:
    return store.provenance_of(t)


def view_by_asserters(store: ClaimStore, accepted) -> TripleSet:
    return store.view_by_asserters(accepted)


# -- claim files (one JSON object per line) --------------------------------


def claim_to_json(claim: Claim) -> str:
    payload = {
        "asserter": claim.asserter,
        "source": claim.source,
        "timestamp": claim.timestamp.isoformat(),
        "assertion": "".join(render_triple(t) + "\n" for t in claim.assertion),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def claim_from_json(line: str, origin: str = "claims") -> Claim:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise StoreError(f"{origin}: invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise StoreError(f"{origin}: claim must be a JSON object")
    for key in ("asserter", "source", "timestamp", "assertion"):
        if not isinstance(data.get(key), str):
            raise StoreError(f"{origin}: claim field {key!r} missing or not a string")
    try:
        assertion = parse_triples(data["assertion"], {})
    except WireParseError as e:
        raise StoreError(f"{origin}: bad assertion payload: {e}") from e
    return Claim(
        data["asserter"], data["source"], parse_timestamp(data["timestamp"]), tuple(assertion)
    )


def read_claims(path: Pathish) -> list:
    """Parse a claims file into Claim objects, preserving line order."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise StoreError(f"cannot read {path}: {e}") from e
    out = []
    for i, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        out.append(claim_from_json(line, f"{path}:{i}"))
    return out


def write_claims(claims: Iterable, path: Pathish, append: bool = False) -> None:
    path = Path(path)
    mode = "a" if append else "w"
    with path.open(mode, encoding="utf-8") as fh:
        for claim in claims:
            fh.write(claim_to_json(claim) + "\n")


def load_claimstore(path: Pathish) -> ClaimStore:
    """Build a store by replaying a claims file in line order."""
    store = ClaimStore()
    for claim in read_claims(path):
        store.ingest(claim.assertion, claim.asserter, claim.source, claim.timestamp)
    return store
