"""
Tests for normal forms, reduction traces and self-reduction
"""

import logging
import random

from fixtures import S2_BASIS, S2_GENERATORS, M2_JORDAN_BASIS, polys
from poly import Polynomial, normalize
from presentation_file import parse_polynomial
from reduce import GeneratorIndex, normal_form, self_reduce
from words import Alphabet

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)

ABC = Alphabet.of("abc")


def p(text, alphabet=ABC):
    return parse_polynomial(text, alphabet)


def random_polynomial(rng, alphabet, terms=4, degree=4):
    raw = []
    for _ in range(rng.randint(1, terms)):
        word = tuple(rng.randrange(len(alphabet)) for _ in range(rng.randint(0, degree)))
        raw.append((rng.randint(-3, 3), word))
    return normalize(raw, alphabet)


def test_normal_form_against_raw_generators():
    """The fixed strategy takes the path ending in -ab + b"""
    G = polys(S2_GENERATORS, "abc")
    h, trace = normal_form(p("c^2b"), G)
    assert h == p("-ab + b")
    assert trace.verify()
    # first step eliminates c^2b with cb + bc - c, the smaller leading monomial
    assert trace.steps[0].generator_index == 4
    assert trace.steps[0].occurrence == 1


def test_normal_form_against_completed_basis():
    """NF(c²b) = b once the basis is complete"""
    h, trace = normal_form(p("c^2b"), polys(S2_BASIS, "abc"))
    assert h == p("b")
    assert trace.verify()


def test_normal_word_is_unchanged():
    """Already-normal input comes back with an empty trace"""
    h, trace = normal_form(p("abc"), [p("a^2 - a")])
    assert h == p("abc")
    assert trace.steps == []
    h, trace = normal_form(Polynomial.zero(ABC), [p("a^2 - a")])
    assert h.is_zero()


def test_trace_steps():
    """Each step subtracts a sandwich whose leading word is the one eliminated"""
    rng = random.Random(5)
    G = polys(S2_GENERATORS, "abc")
    for _ in range(50):
        f = random_polynomial(rng, ABC)
        h, trace = normal_form(f, G)
        assert trace.verify()
        assert trace.output == h
        previous = None
        for step in trace.steps:
            assert step.subtracted.lm == step.eliminated
            key = (len(step.eliminated), step.eliminated)
            if previous is not None:
                assert key <= previous
            previous = key
        index = GeneratorIndex(G)
        assert all(not index.reducible(w) for w, _ in h.terms)


def test_trace_export():
    """Trace dictionaries and listings name every step"""
    _, trace = normal_form(p("c^2b"), polys(S2_GENERATORS, "abc"))
    data = trace.to_dict()
    assert data["input"] == "c^2b"
    assert data["output"] == "-ab + b"
    assert len(data["steps"]) == len(trace.steps)
    assert data["steps"][0]["eliminated"] == "c^2b"
    text = trace.to_text()
    assert text.splitlines()[0] == "f0 = c^2b"
    assert text.splitlines()[-1] == "NF = -ab + b"


def test_strategy_independence_against_complete_bases():
    """Random reduction orders agree with the fixed strategy on a Gröbner basis"""
    rng = random.Random(2024)
    for text, letters in ((S2_BASIS, "abc"), (M2_JORDAN_BASIS, "abcd")):
        alphabet = Alphabet.of(letters)
        G = polys(text, letters)
        for _ in range(20):
            f = random_polynomial(rng, alphabet)
            fixed, _ = normal_form(f, G)
            randomized, trace = normal_form(f, G, rng=rng)
            assert randomized == fixed
            assert trace.verify()


def test_self_reduce_examples():
    """Linear examples, and a set that is already self-reduced"""
    assert self_reduce([p("c - a"), p("c - b")]) == [p("b - a"), p("c - a")]
    abcd = Alphabet.of("abcd")
    result = self_reduce([p("d - a", abcd), p("d - b", abcd), p("d - c", abcd)])
    assert result == [p("b - a", abcd), p("c - a", abcd), p("d - a", abcd)]
    G = polys(S2_GENERATORS, "abc")
    assert self_reduce(G) == G


def test_self_reduce_drops_zeros_and_duplicates():
    """Zeros vanish and scalar multiples collapse"""
    result = self_reduce([p("2ab - 2a"), Polynomial.zero(ABC), p("ab - a")])
    assert result == [p("ab - a")]


def test_self_reduce_unit_ideal():
    """A constant anywhere collapses the set to {1}"""
    assert self_reduce([p("a - 1"), p("a^2")]) == [Polynomial.one(ABC)]
    assert self_reduce([p("3"), p("ab")]) == [Polynomial.one(ABC)]


def test_self_reduce_preserves_the_ideal():
    """Every input reduces to zero against the output"""
    rng = random.Random(42)
    for _ in range(25):
        G = [random_polynomial(rng, ABC, terms=3, degree=3) for _ in range(3)]
        G = [g for g in G if g]
        reduced = self_reduce(G)
        for g in G:
            h, _ = normal_form(g, reduced)
            assert h.is_zero()
        for i, g in enumerate(reduced):
            others = reduced[:i] + reduced[i + 1:]
            if others:
                h, _ = normal_form(g, others)
                assert h == g
            assert g.lc == 1
