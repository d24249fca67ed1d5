"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SpectraError(Exception):
    """Base class for all errors raised by acspectra."""


class SizeLimitError(SpectraError, ValueError):
    """A requested size is outside the configured range."""


class CapExceededError(SizeLimitError):
    """A computation would exceed a configured resource cap."""


class MalformedTermError(SpectraError, ValueError):
    """A term violates a structural precondition (e.g. repeated variables)."""


class NoEggsError(MalformedTermError):
    """A single-leaf term has no nest eggs."""


class EmptyTermListError(SpectraError, ValueError):
    """A bracketing was requested for an empty list of terms."""


class ParseError(SpectraError, ValueError):
    """Term text could not be parsed.

    ``offset`` is the byte offset into the input at which the problem was detected.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnbalancedParenError(ParseError):
    pass


class UnknownTokenError(ParseError):
    pass


class EmptyInputError(ParseError):
    pass


class JuxtapositionError(ParseError):
    """More than two subterms were juxtaposed without grouping."""


class CayleyFormatError(SpectraError, ValueError):
    """A Cayley table document is ragged, empty, or has out-of-range entries."""


class AssignmentError(SpectraError, ValueError):
    """An assignment misses a variable or maps one outside the carrier."""


class UnknownNameError(SpectraError, KeyError):
    """A registry, catalog, or oracle lookup used an unknown name."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""
