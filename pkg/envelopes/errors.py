"""
Exception types raised by the envelope engine.

Everything user-facing derives from EnvelopeError so the CLI can map
failures to exit codes in one place.
"""

from typing import Any, Optional


class EnvelopeError(Exception):
    """Base class for all engine errors."""


class ParseError(EnvelopeError):
    """
    A polynomial, presentation or structure-constants text did not parse.

    Args:
        message: What went wrong
        text: The offending source text (one line or expression)
        position: Character offset into text, when known
        line: 1-based line number inside a file, when known
    """

    def __init__(self, message: str, text: str = "", position: Optional[int] = None,
                 line: Optional[int] = None):
        self.message = message
        self.text = text
        self.position = position
        self.line = line
        where = ""
        if line is not None:
            where += f"line {line}"
        if position is not None:
            where += (", " if where else "") + f"column {position + 1}"
        super().__init__(f"{message} ({where})" if where else message)

    def render(self) -> str:
        """Return the message with the source text and a caret under the fault."""
        lines = [str(self)]
        if self.text:
            lines.append(f"  {self.text}")
            if self.position is not None:
                lines.append("  " + " " * self.position + "^")
        return "\n".join(lines)


class WordError(EnvelopeError):
    """Invalid letter index, empty search pattern or alphabet mismatch."""


class OverlapError(EnvelopeError):
    """Overlap requested for words where one properly contains the other, or an
    overlap that does not match the leading monomials it is applied to."""


class StructureConstantsError(EnvelopeError):
    """Structure constants fail a required identity; `witness` is the index tuple."""

    def __init__(self, message: str, witness: Any = None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness {witness})")


class CatalogError(EnvelopeError):
    """Unknown builtin operation or system key."""


class IncompleteBasisError(EnvelopeError):
    """A Complete Gröbner basis was required but a truncated result was given."""


class InfiniteQuotientError(EnvelopeError):
    """The quotient has infinitely many normal words and the caller asked for all of them."""


class UnitIdealError(EnvelopeError):
    """The forbidden set contains the empty word: every word is reducible."""


class InconclusiveComparisonError(EnvelopeError):
    """Ideal comparison could not be decided under the given completion bounds."""
