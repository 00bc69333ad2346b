"""
Tests for the polynomial grammar, presentation files and structure-constant files
"""

import logging
from fractions import Fraction

import pytest

from errors import ParseError
from fixtures import S2_GENERATORS, polys
from groebner import Presentation
from presentation_file import (format_presentation, load_presentation, load_structure_constants,
                               parse_polynomial, parse_presentation, parse_structure_constants)
from words import Alphabet

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)

ABC = Alphabet.of("abc")

S2_FILE = """
# symmetric 2x2 matrices
alphabet: a b c
label: S2
relations:
a^2 - a
ba + ab
b^2 - b
ca + ac - c   # c = E12 + E21
cb + bc - c
c^2 - b - a
"""

SL2_SC = """
# sl2 in the basis h, e, f
dim 3
arity 2
names: h e f
1 2 -> 2*x_2
2 1 -> -2*x_2
1 3 -> -2*x_3
3 1 -> 2*x_3
2 3 -> x_1
3 2 -> -x_1
"""


def test_grammar_examples():
    """Powers, explicit products, rationals and the empty word"""
    f = parse_polynomial("c^2 - b - a", ABC)
    assert f.terms == ((ABC.word("cc"), 1), (ABC.word("b"), -1), (ABC.word("a"), -1))
    g = parse_polynomial("2*a*c*b + 1", ABC)
    assert g.as_dict() == {ABC.word("acb"): 2, (): 1}
    assert parse_polynomial("-1/2ab + 3/4*b^2a", ABC).as_dict() == {
        ABC.word("ab"): Fraction(-1, 2), ABC.word("bba"): Fraction(3, 4)}
    assert parse_polynomial("1", ABC).as_dict() == {(): 1}
    assert parse_polynomial("ab − ba", ABC) == parse_polynomial("ab - ba", ABC)
    assert parse_polynomial("a·b", ABC) == parse_polynomial("ab", ABC)
    assert parse_polynomial("ab - ab", ABC).is_zero()


def test_grammar_errors_carry_positions():
    """Each fault reports where it happened"""
    with pytest.raises(ParseError) as excinfo:
        parse_polynomial("b a", ABC)
    assert excinfo.value.position == 2
    assert "whitespace" in excinfo.value.message

    with pytest.raises(ParseError) as excinfo:
        parse_polynomial("ab + x", ABC)
    assert excinfo.value.position == 5
    assert excinfo.value.render().splitlines()[-1] == "       ^"

    with pytest.raises(ParseError) as excinfo:
        parse_polynomial("1/0 a", ABC)
    assert excinfo.value.position == 2

    with pytest.raises(ParseError):
        parse_polynomial("", ABC)
    with pytest.raises(ParseError):
        parse_polynomial("a + ", ABC)
    with pytest.raises(ParseError):
        parse_polynomial("a^", ABC)


def test_parse_presentation():
    """Comments, labels and trailing comments are handled"""
    p = parse_presentation(S2_FILE)
    assert p.alphabet == ABC
    assert p.label == "S2"
    assert list(p.generators) == polys(S2_GENERATORS, "abc")


def test_presentation_errors_name_the_line():
    """Relation errors report their line number"""
    text = "alphabet: a b\nrelations:\nab - ba\nab + c\n"
    with pytest.raises(ParseError) as excinfo:
        parse_presentation(text)
    assert excinfo.value.line == 4
    with pytest.raises(ParseError):
        parse_presentation("relations:\nab\n")
    with pytest.raises(ParseError):
        parse_presentation("alphabet: a a\nrelations:\n")
    with pytest.raises(ParseError):
        parse_presentation("alphabet: a b\nab\n")


def test_compact_alphabet_and_format(tmp_path):
    """alphabet: hef reads as three letters; formatting reads back to the same presentation"""
    p = parse_presentation("alphabet: hef\nrelations:\neh - he + 2e\n")
    assert p.alphabet.letters == ("h", "e", "f")
    original = Presentation(ABC, tuple(polys(S2_GENERATORS, "abc")), "S2")
    path = tmp_path / "s2.pres"
    path.write_text(format_presentation(original), encoding="utf-8")
    loaded = load_presentation(str(path))
    assert loaded == original


def test_parse_structure_constants(tmp_path):
    """1-based tuples, named letters and omitted zero products"""
    path = tmp_path / "sl2.sc"
    path.write_text(SL2_SC, encoding="utf-8")
    sc = load_structure_constants(str(path))
    assert sc.dimension == 3 and sc.arity == 2
    assert sc.names == ("h", "e", "f")
    assert sc.product((0, 1)) == (0, 2, 0)
    assert sc.product((2, 1)) == (-1, 0, 0)
    assert sc.product((0, 0)) == (0, 0, 0)

    triple = parse_structure_constants("dim 2\narity 3\n1 2 1 -> 1/2 x_1 - x_2\n2 2 2 -> 0\n")
    assert triple.product((0, 1, 0)) == (Fraction(1, 2), -1)


def test_structure_constant_errors():
    """Headers first, tuples in range, well-formed combinations"""
    with pytest.raises(ParseError):
        parse_structure_constants("1 2 -> x_1\n")
    with pytest.raises(ParseError):
        parse_structure_constants("dim 2\narity 2\n1 3 -> x_1\n")
    with pytest.raises(ParseError):
        parse_structure_constants("dim 2\narity 2\n1 2 -> x_3\n")
    with pytest.raises(ParseError) as excinfo:
        parse_structure_constants("dim 2\narity 2\n1 2 -> x_1 x_2\n")
    assert excinfo.value.line == 3
    with pytest.raises(ParseError):
        parse_structure_constants("dim 2\n")
