"""
Words over an ordered alphabet and the deglex order.

A word is a tuple of letter indices; the empty tuple is the empty word 1.
Comparing `(len(w), w)` keys with Python's tuple comparison is exactly
deglex, which is what every sort in the engine relies on.
"""

import itertools
import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterator, List, Optional, Sequence, Tuple

from errors import OverlapError, WordError

logger = logging.getLogger("envelopes.words")

MAX_LETTERS = 64
RESERVED_CHARACTERS = set("+-*/^#:()0123456789 \t\r\n−")

Word = Tuple[int, ...]
EMPTY_WORD: Word = ()


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Alphabet:
    """Ordered single-character letters; list position is precedence."""

    letters: Tuple[str, ...]

    def __post_init__(self):
        if len(self.letters) > MAX_LETTERS:
            raise WordError(f"alphabet has {len(self.letters)} letters, at most {MAX_LETTERS} allowed")
        if len(set(self.letters)) != len(self.letters):
            raise WordError(f"alphabet letters are not distinct: {' '.join(self.letters)}")
        for letter in self.letters:
            if len(letter) != 1 or letter in RESERVED_CHARACTERS:
                raise WordError(f"invalid letter name {letter!r}")
        object.__setattr__(self, "_positions", {letter: i for i, letter in enumerate(self.letters)})

    @classmethod
    def of(cls, letters: Sequence[str]) -> "Alphabet":
        """Alphabet.of("abcd") or Alphabet.of(["h", "e", "f"])."""
        return cls(tuple(letters))

    @classmethod
    def standard(cls, size: int) -> "Alphabet":
        """The first `size` lowercase letters, a ≺ b ≺ c ≺ ..."""
        pool = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZαβγδεζηθικλμ"
        if size > len(pool):
            raise WordError(f"no standard alphabet of size {size}")
        return cls(tuple(pool[:size]))

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self._positions[letter]
        except KeyError:
            raise WordError(f"letter {letter!r} is not in the alphabet") from None

    def word(self, text: str) -> Word:
        """Plain concatenated letters, e.g. "aabc"; "1" or "" is the empty word."""
        if text in ("", "1"):
            return EMPTY_WORD
        return tuple(self.index(ch) for ch in text)

    def check(self, w: Word) -> Word:
        size = len(self.letters)
        for i in w:
            if not 0 <= i < size:
                raise WordError(f"letter index {i} out of range for alphabet of size {size}")
        return w

    def format(self, w: Word) -> str:
        """Canonical text: runs of one letter written with ^k, empty word as 1."""
        if not w:
            return "1"
        parts = []
        for letter, run in itertools.groupby(w):
            k = len(list(run))
            name = self.letters[letter]
            parts.append(name if k == 1 else f"{name}^{k}")
        return "".join(parts)


def deglex_key(w: Word) -> Tuple[int, Word]:
    return (len(w), w)


def compare_deglex(u: Word, w: Word, alphabet: Optional[Alphabet] = None) -> Ordering:
    """
    Compare two words in deglex order.

    Args:
        u: First word
        w: Second word
        alphabet: When given, both words are validated against it

    Returns:
        Ordering.LESS, Ordering.EQUAL or Ordering.GREATER
    """
    if alphabet is not None:
        alphabet.check(u)
        alphabet.check(w)
    ku, kw = (len(u), u), (len(w), w)
    if ku < kw:
        return Ordering.LESS
    if ku > kw:
        return Ordering.GREATER
    return Ordering.EQUAL


def is_subword(pattern: Word, w: Word) -> bool:
    n = len(pattern)
    if n > len(w):
        return False
    return any(w[p:p + n] == pattern for p in range(len(w) - n + 1))


def find_occurrences(pattern: Word, w: Word) -> List[int]:
    """Start positions of `pattern` inside `w`, ascending."""
    if not pattern:
        raise WordError("empty pattern")
    n = len(pattern)
    return [p for p in range(len(w) - n + 1) if w[p:p + n] == pattern]


@dataclass(frozen=True)
class Overlap:
    """w1 = left·overlap and w2 = overlap·right, all three nonempty."""

    left: Word
    overlap: Word
    right: Word

    def word(self) -> Word:
        """The overlap word t = left·overlap·right."""
        return self.left + self.overlap + self.right


def proper_overlaps(w1: Word, w2: Word) -> List[Overlap]:
    """
    All proper overlaps of w1 with w2, shortest overlap first.

    Raises:
        OverlapError: if one word is a proper subword of the other
    """
    if (len(w1) < len(w2) and is_subword(w1, w2)) or (len(w2) < len(w1) and is_subword(w2, w1)):
        raise OverlapError(f"{w1} and {w2}: one is a proper subword of the other")
    overlaps = []
    for k in range(1, min(len(w1), len(w2))):
        if w1[-k:] == w2[:k]:
            overlaps.append(Overlap(w1[:-k], w1[-k:], w2[k:]))
    return overlaps


def iter_words(alphabet_size: int, degree: int) -> Iterator[Word]:
    """All words of one degree, in deglex (here: lexicographic) order."""
    return itertools.product(range(alphabet_size), repeat=degree)
