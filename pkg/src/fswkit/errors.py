"""Exception hierarchy for the toolkit.

Every error raised by the parsing, factorization, conversion, corpus, and
metric layers derives from FswError so callers can catch one type. Errors
that originate inside a text line may carry a 1-based column offset for
diagnostics.
"""

from __future__ import annotations


class FswError(ValueError):
    """Base class for all toolkit errors."""

    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.message = message
        self.column = column


# --- parsing (fsw grammar) ---

class MalformedSymbol(FswError):
    """Symbol token has the wrong shape (length, non-hex digit, column > 5)."""


class OutOfRangeBase(FswError):
    """Symbol base lies outside the legal 0x100..0x38b interval."""


class MalformedSign(FswError):
    """Sign token violates the grammar (missing marker, dangling coordinate, ...)."""


class CoordinateOutOfRange(FswError):
    """Positional number outside the 250..750 range."""


class EmptyInput(FswError):
    """Utterance text is empty or whitespace only."""


# --- factorization ---

class EmptyList(FswError):
    """Rank computation requires at least one value."""


class MisalignedStreams(FswError):
    """Factor streams do not all have the same length."""


class OrphanPlacement(FswError):
    """Symbol stream contains a placement before any box marker."""


class ValueOutOfRange(FswError):
    """Factor stream holds a positional value outside 250..750."""


# --- unicode conversion ---

class UnknownCodepoint(FswError):
    """Codepoint is not part of the SWU mapping domain."""


class MappingFileError(FswError):
    """SWU mapping data file is malformed or fails its checksum."""


# --- corpus pipeline ---

class EmptyCorpus(FswError):
    """Operation needs at least one record / segment."""


class VocabTooSmall(FswError):
    """Requested subword vocabulary is below the character inventory size."""


# --- metrics ---

class LengthMismatch(FswError):
    """Hypothesis and reference collections differ in length."""
