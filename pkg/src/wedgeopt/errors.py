"""Exception types shared across the package."""


class WedgeoptError(Exception):
    """Base class for every error raised by this package."""


class DomainError(WedgeoptError, ValueError):
    """An input violates a documented precondition or invariant."""


class RankDeficientError(WedgeoptError):
    """The constraint rows are linearly dependent."""


class ParseError(WedgeoptError):
    """A problem file is syntactically malformed."""


class ValidationError(WedgeoptError):
    """A problem file is well-formed but breaks a dimension or value rule."""
