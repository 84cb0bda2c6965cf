"""Exception types shared across the package."""


class PropPError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PropPError, ValueError):
    """An argument lies outside an operation's documented domain."""


class ResourceError(PropPError, RuntimeError):
    """A request exceeds a configured resource budget."""


class SequenceFormatError(PropPError, ValueError):
    """A sequence file or in-memory sequence violates the input contract."""
