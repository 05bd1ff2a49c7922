"""Exception hierarchy for the gks package."""

from __future__ import annotations


class GKSError(Exception):
    """Base class for all errors raised by this package."""


class TableFormatError(GKSError, ValueError):
    """A UCODE text could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class HeaderMissing(TableFormatError):
    pass


class LengthMismatch(TableFormatError):
    pass


class BadCharacter(TableFormatError):
    pass


class UnderlineCountMismatch(TableFormatError):
    pass


class UnderlinedZero(TableFormatError):
    pass


class NotFound(GKSError, KeyError):
    """No table row carries the requested underline set."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "not found"


class DecodeError(GKSError):
    """Bob received a word that honest play cannot produce."""


class MultipleOnes(DecodeError):
    pass


class NoMatchError(DecodeError):
    pass


class AdversaryProtocolError(GKSError):
    """Merlin sent a repeated or out-of-range index."""


class BudgetExceeded(GKSError):
    pass


class DomainError(GKSError, ValueError):
    pass


class DescriptorError(GKSError, ValueError):
    pass


class TableError(GKSError):
    """A table file failed to load or failed verification."""
