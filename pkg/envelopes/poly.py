"""
Noncommutative polynomials in canonical form.

A Polynomial is immutable: a tuple of (monomial, coefficient) pairs with
nonzero coefficients and monomials strictly descending in deglex order,
plus the coefficient field every arithmetic step goes through.
Equality is structural, which is what makes fixture comparison exact.
"""

from typing import Dict, Iterable, Mapping, Tuple, Union

from arith import QQ, Coefficient, RationalField
from errors import WordError
from words import EMPTY_WORD, Alphabet, Word

Term = Tuple[Word, Coefficient]
Scalar = Union[int, Coefficient]


def _term_key(term: Term):
    w = term[0]
    return (len(w), w)


class Polynomial:
    __slots__ = ("alphabet", "terms", "field", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Tuple[Term, ...], field: RationalField = QQ):
        # trusted: callers pass canonical terms; use normalize() otherwise
        self.alphabet = alphabet
        self.terms = terms
        self.field = field
        self._hash = None

    # ------------------------------------------------------------------
    # construction

    @classmethod
    def from_dict(cls, alphabet: Alphabet, coefficients: Mapping[Word, Coefficient],
                  field: RationalField = QQ) -> "Polynomial":
        """Build from a monomial -> coefficient mapping; zero entries are dropped."""
        zero, equal = field.zero(), field.equal
        items = [(w, c) for w, c in coefficients.items() if not equal(c, zero)]
        items.sort(key=_term_key, reverse=True)
        return cls(alphabet, tuple(items), field)

    @classmethod
    def zero(cls, alphabet: Alphabet, field: RationalField = QQ) -> "Polynomial":
        return cls(alphabet, (), field)

    @classmethod
    def one(cls, alphabet: Alphabet, field: RationalField = QQ) -> "Polynomial":
        return cls(alphabet, ((EMPTY_WORD, field.one()),), field)

    @classmethod
    def monomial(cls, alphabet: Alphabet, w: Word, coefficient: Scalar = 1,
                 field: RationalField = QQ) -> "Polynomial":
        alphabet.check(w)
        c = field.coerce(coefficient)
        return cls(alphabet, () if field.equal(c, field.zero()) else ((w, c),), field)

    # ------------------------------------------------------------------
    # accessors

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        """True for nonzero multiples of the empty word."""
        return len(self.terms) == 1 and self.terms[0][0] == EMPTY_WORD

    @property
    def lm(self) -> Word:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return self.terms[0][0]

    @property
    def lc(self) -> Coefficient:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.terms[0][1]

    def support(self) -> frozenset:
        return frozenset(w for w, _ in self.terms)

    def coefficient(self, w: Word) -> Coefficient:
        for m, c in self.terms:
            if m == w:
                return c
        return self.field.zero()

    def degree(self) -> int:
        return len(self.terms[0][0]) if self.terms else -1

    def as_dict(self) -> Dict[Word, Coefficient]:
        return dict(self.terms)

    def sort_key(self):
        """Total order: leading monomial first, ties by successive (monomial, coefficient)."""
        return tuple(((len(w), w), c) for w, c in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ------------------------------------------------------------------
    # comparison

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms and self.alphabet == other.alphabet

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __lt__(self, other: "Polynomial") -> bool:
        return self.sort_key() < other.sort_key()

    # ------------------------------------------------------------------
    # arithmetic

    def _same_alphabet(self, other: "Polynomial"):
        if self.alphabet is not other.alphabet and self.alphabet != other.alphabet:
            raise WordError("polynomials over different alphabets")
        if self.field is not other.field and self.field != other.field:
            raise ValueError(f"polynomials over different fields {self.field!r} and {other.field!r}")

    def _combine(self, other: "Polynomial", sign: int) -> "Polynomial":
        self._same_alphabet(other)
        field = self.field
        add, zero = field.add, field.zero()
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = add(acc.get(w, zero), c if sign > 0 else field.negate(c))
        return Polynomial.from_dict(self.alphabet, acc, field)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return self._combine(other, 1)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self._combine(other, -1)

    def __neg__(self) -> "Polynomial":
        negate = self.field.negate
        return Polynomial(self.alphabet, tuple((w, negate(c)) for w, c in self.terms), self.field)

    def scale(self, factor: Scalar) -> "Polynomial":
        field = self.field
        factor = field.coerce(factor)
        if field.equal(factor, field.zero()):
            return Polynomial.zero(self.alphabet, field)
        mul = field.mul
        return Polynomial(self.alphabet, tuple((w, mul(c, factor)) for w, c in self.terms), field)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def sandwich(self, left: Word, right: Word) -> "Polynomial":
        """left·self·right; multiplying by words keeps the term order."""
        return Polynomial(self.alphabet, tuple((left + w + right, c) for w, c in self.terms), self.field)

    # ------------------------------------------------------------------
    # text

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (w, c) in enumerate(self.terms):
            text = self.field.to_text(c)
            negative = text.startswith("-")
            magnitude = text[1:] if negative else text
            if not w:
                body = magnitude
            elif magnitude == "1":
                body = self.alphabet.format(w)
            else:
                body = magnitude + self.alphabet.format(w)
            if i == 0:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(f" {'-' if negative else '+'} {body}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def normalize(raw_terms: Iterable[Tuple[Scalar, Word]], alphabet: Alphabet,
              field: RationalField = QQ) -> Polynomial:
    """Combine like terms, drop zeros and sort strictly descending."""
    add, zero = field.add, field.zero()
    acc: Dict[Word, Coefficient] = {}
    for coefficient, w in raw_terms:
        alphabet.check(w)
        acc[w] = add(acc.get(w, zero), field.coerce(coefficient))
    return Polynomial.from_dict(alphabet, acc, field)


def standard_form(f: Polynomial) -> Polynomial:
    """Monic scalar multiple of f (zero stays zero)."""
    if not f.terms:
        return f
    field = f.field
    lead = f.terms[0][1]
    if field.equal(lead, field.one()):
        return f
    inverse, mul = field.invert(lead), field.mul
    return Polynomial(f.alphabet, tuple((w, mul(c, inverse)) for w, c in f.terms), field)


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    p._same_alphabet(q)
    field = p.field
    add, mul, zero = field.add, field.mul, field.zero()
    acc: Dict[Word, Coefficient] = {}
    for u, a in p.terms:
        for v, b in q.terms:
            w = u + v
            acc[w] = add(acc.get(w, zero), mul(a, b))
    return Polynomial.from_dict(p.alphabet, acc, field)


def sandwich(u: Word, g: Polynomial, v: Word) -> Polynomial:
    return g.sandwich(u, v)


def sort_polynomials(polys: Iterable[Polynomial]) -> list:
    """Sort by the total polynomial order."""
    return sorted(polys, key=Polynomial.sort_key)
