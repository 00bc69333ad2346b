"""
Exact coefficient arithmetic.

Coefficients are fractions.Fraction values: always reduced, positive
denominator, zero stored as 0/1. Every Polynomial carries the field its
coefficients live in, and poly, reduce, groebner and quotient build,
combine, invert and compare coefficients only through that object
(zero, one, add, mul, negate, invert, equal, coerce, to_text).
"""

import operator
import re
from fractions import Fraction
from typing import Union

from errors import ParseError

Coefficient = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class RationalField:
    """The field of rational numbers, characteristic 0."""

    name = "QQ"
    characteristic = 0

    add = staticmethod(operator.add)
    mul = staticmethod(operator.mul)
    negate = staticmethod(operator.neg)
    equal = staticmethod(operator.eq)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("field", self.characteristic))

    def __repr__(self) -> str:
        return self.name

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def invert(self, x: Fraction) -> Fraction:
        # Fraction(1, 0) raises ZeroDivisionError
        return Fraction(1) / x

    def coerce(self, value: Union[int, str, Fraction]) -> Fraction:
        """Build a field element from an int, a Fraction or `p/q` text."""
        if isinstance(value, str):
            return self.from_text(value)
        return Fraction(value)

    def from_text(self, text: str) -> Fraction:
        """
        Parse `p` or `p/q`.

        Raises:
            ParseError: on anything else, or a zero denominator
        """
        match = _RATIONAL_RE.match(text)
        if not match:
            raise ParseError("malformed coefficient", text, 0)
        numerator, denominator = match.group(1), match.group(2)
        if denominator is not None and int(denominator) == 0:
            raise ParseError("zero denominator in coefficient", text, text.index("/"))
        return Fraction(int(numerator), int(denominator) if denominator else 1)

    def to_text(self, x: Fraction) -> str:
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"


QQ = RationalField()
