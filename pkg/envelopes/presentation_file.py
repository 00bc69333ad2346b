"""
Text formats: polynomial expressions, presentation files and
structure-constant files.

Polynomial grammar:
    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := [rational] ['*'] word | rational
    word     := factor (['*'] factor)*      factor := letter ['^' int]
    rational := int ['/' int]
The bare word 1 is the empty word. Whitespace separates tokens, so it may
not appear between the letters of a word.

Presentation file:
    # comment
    alphabet: a b c
    label: S2
    relations:
    a^2 - a
    ...
"""

import logging
import os
import re
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from arith import QQ
from envelope import StructureConstants
from errors import ParseError, WordError
from groebner import Presentation
from poly import Polynomial, normalize
from words import Alphabet, Word

logger = logging.getLogger("envelopes.presentation_file")

_SYMBOLS = {"+": "PLUS", "-": "MINUS", "−": "MINUS", "*": "STAR", "·": "STAR", "^": "CARET", "/": "SLASH"}


class Token(NamedTuple):
    type: str
    value: str
    where: int
    spaced: bool


def tokenize(text: str) -> List[Token]:
    tokens = []
    i = 0
    spaced = False
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            spaced = True
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", text[i:j], i, spaced))
            i = j
        elif ch in _SYMBOLS:
            tokens.append(Token(_SYMBOLS[ch], ch, i, spaced))
            i += 1
        else:
            tokens.append(Token("LETTER", ch, i, spaced))
            i += 1
        spaced = False
    return tokens


class _PolynomialParser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.alphabet = alphabet
        self.tokens = tokenize(text)
        self.pos = 0

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        where = token.where if token is not None else len(self.text)
        return ParseError(message, self.text, where)

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> List[Tuple[Fraction, Word]]:
        if not self.tokens:
            raise self.error("empty polynomial")
        terms = []
        sign = 1
        token = self.peek()
        if token.type in ("PLUS", "MINUS"):
            sign = -1 if token.type == "MINUS" else 1
            self.take()
        while True:
            coefficient, word = self.term()
            terms.append((sign * coefficient, word))
            token = self.peek()
            if token is None:
                return terms
            if token.type in ("PLUS", "MINUS"):
                sign = -1 if token.type == "MINUS" else 1
                self.take()
                continue
            if token.type in ("LETTER", "NUMBER") and token.spaced:
                raise self.error("whitespace inside a word", token)
            raise self.error(f"expected '+' or '-', found {token.value!r}", token)

    def term(self) -> Tuple[Fraction, Word]:
        token = self.peek()
        if token is None:
            raise self.error("expected a term")
        coefficient = None
        if token.type == "NUMBER":
            coefficient = self.rational()
            token = self.peek()
            if token is not None and token.type == "STAR":
                self.take()
                token = self.peek()
                if token is None:
                    raise self.error("expected a word after '*'")
                if token.type == "NUMBER":
                    if token.value != "1":
                        raise self.error("malformed coefficient", token)
                    self.take()
                    return coefficient, ()
                if token.type != "LETTER":
                    raise self.error("expected a word after '*'", token)
            if token is None or token.type != "LETTER" or (token.spaced and self.tokens[self.pos - 1].type != "STAR"):
                return coefficient, ()
        elif token.type != "LETTER":
            raise self.error(f"expected a term, found {token.value!r}", token)
        return (coefficient if coefficient is not None else QQ.one()), self.word()

    def rational(self) -> Fraction:
        numerator = self.take()
        token = self.peek()
        if token is not None and token.type == "SLASH":
            self.take()
            denominator = self.peek()
            if denominator is None or denominator.type != "NUMBER":
                raise self.error("malformed coefficient: expected a denominator", denominator)
            self.take()
            if int(denominator.value) == 0:
                raise self.error("zero denominator in coefficient", denominator)
            return QQ.from_text(f"{numerator.value}/{denominator.value}")
        return QQ.from_text(numerator.value)

    def word(self) -> Word:
        letters: List[int] = []
        first = True
        while True:
            token = self.peek()
            if token is None or token.type != "LETTER":
                break
            if token.spaced and not first and self.tokens[self.pos - 1].type != "STAR":
                raise self.error("whitespace inside a word", token)
            self.take()
            try:
                letter = self.alphabet.index(token.value)
            except WordError:
                raise self.error(f"undeclared letter {token.value!r}", token) from None
            power = 1
            nxt = self.peek()
            if nxt is not None and nxt.type == "CARET":
                self.take()
                exponent = self.peek()
                if exponent is None or exponent.type != "NUMBER":
                    raise self.error("expected an integer exponent after '^'", exponent)
                self.take()
                power = int(exponent.value)
            letters.extend([letter] * power)
            first = False
            nxt = self.peek()
            if nxt is not None and nxt.type == "STAR":
                after = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
                if after is None or after.type != "LETTER":
                    raise self.error("expected a letter after '*'", after)
                self.take()
        return tuple(letters)


def parse_polynomial(text: str, alphabet: Alphabet) -> Polynomial:
    """
    Parse a polynomial expression over an alphabet.

    Raises:
        ParseError: with the character position of the fault
    """
    return normalize(_PolynomialParser(text, alphabet).parse(), alphabet)


def parse_presentation(text: str, source: str = "<text>") -> Presentation:
    """Parse a presentation file's contents."""
    alphabet: Optional[Alphabet] = None
    label = ""
    in_relations = False
    relations: List[Polynomial] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lowered = line.lower()
        if lowered.startswith("alphabet:"):
            names = line.split(":", 1)[1].split()
            if len(names) == 1 and len(names[0]) > 1:
                names = list(names[0])
            try:
                alphabet = Alphabet.of(names)
            except WordError as e:
                raise ParseError(str(e), raw, line=number) from None
            continue
        if lowered.startswith("label:"):
            label = line.split(":", 1)[1].strip()
            continue
        if lowered.startswith("relations:"):
            if alphabet is None:
                raise ParseError("relations given before the alphabet", raw, line=number)
            in_relations = True
            rest = line.split(":", 1)[1].strip()
            if rest:
                relations.append(_parse_line(rest, alphabet, number))
            continue
        if not in_relations:
            raise ParseError(f"unexpected line in {source}", raw, 0, line=number)
        relations.append(_parse_line(line, alphabet, number))
    if alphabet is None:
        raise ParseError(f"{source}: missing 'alphabet:' line")
    logger.debug(f"{source}: {len(relations)} relations over {' '.join(alphabet.letters)}")
    return Presentation(alphabet, tuple(relations), label or os.path.basename(source))


def _parse_line(text: str, alphabet: Alphabet, number: int) -> Polynomial:
    try:
        return parse_polynomial(text, alphabet)
    except ParseError as e:
        raise ParseError(e.message, e.text, e.position, line=number) from None


def load_presentation(path: str) -> Presentation:
    with open(path, "r", encoding="utf-8") as f:
        return parse_presentation(f.read(), path)


def format_presentation(p: Presentation) -> str:
    """Inverse of parse_presentation."""
    lines = [f"alphabet: {' '.join(p.alphabet.letters)}"]
    if p.label:
        lines.append(f"label: {p.label}")
    lines.append("relations:")
    lines.extend(g.to_text() for g in p.generators)
    return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(r"^(dim|arity)\s+(\d+)$", re.IGNORECASE)
_SC_TERM_RE = re.compile(r"\s*([+-])?\s*(?:(\d+(?:\s*/\s*\d+)?)\s*\*?\s*)?x_\{?(\d+)\}?\s*")


def parse_structure_constants(text: str, source: str = "<text>") -> StructureConstants:
    """
    Parse `dim d`, `arity n`, optional `names: ...`, then lines
    `i1 ... in -> c1*x_j1 + ...` with 1-based indices. Omitted tuples are zero.
    """
    header: Dict[str, int] = {}
    names: Optional[Tuple[str, ...]] = None
    products: Dict[Tuple[int, ...], Dict[int, Fraction]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _HEADER_RE.match(line)
        if match:
            header[match.group(1).lower()] = int(match.group(2))
            continue
        if line.lower().startswith("names:"):
            names = tuple(line.split(":", 1)[1].split())
            continue
        if "->" not in line:
            raise ParseError("expected 'i1 ... in -> combination'", raw, 0, line=number)
        if "dim" not in header or "arity" not in header:
            raise ParseError("'dim' and 'arity' must come before the products", raw, 0, line=number)
        lhs, rhs = line.split("->", 1)
        try:
            key = tuple(int(i) - 1 for i in lhs.split())
        except ValueError:
            raise ParseError("indices must be integers", raw, 0, line=number) from None
        if len(key) != header["arity"] or any(not 0 <= i < header["dim"] for i in key):
            raise ParseError(f"bad index tuple for dim {header['dim']}, arity {header['arity']}", raw, 0, line=number)
        products[key] = _parse_combination(rhs, raw, number, header["dim"])
    if "dim" not in header or "arity" not in header:
        raise ParseError(f"{source}: missing 'dim' or 'arity' header")
    return StructureConstants.from_products(header["dim"], header["arity"], products, names)


def _parse_combination(rhs: str, raw: str, number: int, dim: int) -> Dict[int, Fraction]:
    offset = raw.index("->") + 2
    if rhs.strip() == "0":
        return {}
    combination: Dict[int, Fraction] = {}
    pos = 0
    while pos < len(rhs):
        match = _SC_TERM_RE.match(rhs, pos)
        if not match or match.end() == pos or (pos > 0 and not match.group(1)):
            raise ParseError("malformed linear combination", raw, offset + pos, line=number)
        coefficient = QQ.from_text(match.group(2).replace(" ", "")) if match.group(2) else QQ.one()
        if match.group(1) == "-":
            coefficient = QQ.negate(coefficient)
        j = int(match.group(3)) - 1
        if not 0 <= j < dim:
            raise ParseError(f"basis index {j + 1} out of range", raw, offset + pos, line=number)
        combination[j] = QQ.add(combination.get(j, QQ.zero()), coefficient)
        pos = match.end()
    return {j: c for j, c in combination.items() if c}


def load_structure_constants(path: str) -> StructureConstants:
    with open(path, "r", encoding="utf-8") as f:
        return parse_structure_constants(f.read(), path)
