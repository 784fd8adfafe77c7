"""Exception types shared across the package."""


class CharspaceError(Exception):
    """Base class for all package-specific errors."""


class DataFormatError(CharspaceError):
    """An input file could not be parsed under its documented format."""


class MissingTermError(CharspaceError, KeyError):
    """A term required for a lookup is not present in the index."""

    def __init__(self, term: str):
        super().__init__(f"term not in index: {term!r}")
        self.term = term

    def __str__(self) -> str:  # KeyError quotes its arg; keep the message readable
        return self.args[0]


class ValidationError(CharspaceError, ValueError):
    """An operation argument violates its contract."""


class InvalidTransitionError(CharspaceError):
    """A session operation was attempted in a state that does not allow it."""


class TransportError(CharspaceError):
    """A remote lookup failed (timeout, bad status, or malformed payload)."""

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind
