"""Exception types shared across the package.

The CLI maps these onto exit codes: ParseError -> 2, DomainError -> 3.
"""


class AgekitError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AgekitError):
    """Structurally malformed input: bad CSV rows, bad tuples, bad config text."""


class DomainError(AgekitError):
    """Well-formed input that violates a domain invariant."""
