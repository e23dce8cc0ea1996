"""Exception hierarchy for the polare engine.

Structural problems (bad identifiers, dangling references, malformed wire
data) raise; data-quality problems found by shape validation never do --
those are reported as :class:`polare.validation.Violation` values instead.
"""

from __future__ import annotations


class PolareError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(PolareError):
    """Rejected mutation of an entity graph."""


class DuplicateIdError(GraphError):
    """An entity, scheme or concept id is already present in the graph."""


class DanglingReferenceError(GraphError):
    """A referenced id does not resolve to anything in the graph."""


class InvariantError(GraphError):
    """A local invariant of a domain value is violated (e.g. reversed interval)."""


class SchemeError(PolareError):
    """Malformed concept scheme or scheme-binding data."""


class UnknownSchemeError(SchemeError):
    """Lookup against a scheme id that is not registered."""


class UnknownConceptError(SchemeError):
    """Lookup of a concept id that is absent from the given scheme."""


class WireParseError(PolareError):
    """Syntax error in the triple wire format, with source position."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


class UnknownPrefixError(WireParseError):
    """A prefixed name uses a prefix absent from the prefix map."""

    def __init__(self, line: int, column: int, prefix: str):
        super().__init__(line, column, f"unknown prefix {prefix!r}")
        self.prefix = prefix


class AssemblyError(PolareError):
    """Triples could not be mapped to typed entities."""

    def __init__(self, subject: str, message: str):
        super().__init__(f"{subject}: {message}")
        self.subject = subject
        self.reason = message


class TypeConflictError(AssemblyError):
    """One subject carries type markers of two different domain types."""


class MissingFieldError(AssemblyError):
    """A mandatory field of an entity has no triple."""


class ValueParseError(AssemblyError):
    """A literal could not be parsed into its field's value type (date, decimal...)."""


class OrphanSingletonError(AssemblyError):
    """A singleton property is declared but never used as a predicate."""


class AmbiguousSingletonError(AssemblyError):
    """A singleton property is used as the predicate of more than one triple."""


class ClaimError(PolareError):
    """Rejected claim ingestion."""


class EmptyAssertionError(ClaimError):
    """A claim must assert at least one triple."""


class AmbiguousAffiliationError(PolareError):
    """More than one matching membership is in effect at the query date."""

    def __init__(self, person: str, date, organizations):
        orgs = ", ".join(sorted(organizations))
        super().__init__(f"{person} has multiple affiliations in effect at {date}: {orgs}")
        self.person = person
        self.date = date
        self.organizations = tuple(sorted(organizations))


class UnknownAgentError(PolareError):
    """A query names an agent that is not present in the relation graph."""


class StoreError(PolareError):
    """Malformed claim store directory or claim file."""
