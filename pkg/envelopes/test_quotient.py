"""
Tests for normal words, graded dimensions and multiplication tables
"""

import logging
import random
import re
from math import comb

import pytest
import sympy

from catalog import a_pq_system, builtin_operation
from envelope import envelope_presentation
from errors import IncompleteBasisError, InfiniteQuotientError, UnitIdealError
from fixtures import (A2_JORDAN_BASIS, A2_JORDAN_NORMAL_WORDS, ABA_GENERATORS, M2_JORDAN_BASIS,
                      M2_JORDAN_NORMAL_WORDS, M2_JORDAN_TABLE, M2_TETRAD_BASIS, M2_TETRAD_NORMAL_WORDS,
                      M2_TRIPLE_BASIS, M2_TRIPLE_NORMAL_WORDS, S2_BASIS, S2_NORMAL_WORDS, polys, words)
from groebner import CompletionConfig, CompletionStatus, Presentation, complete
from poly import sort_polynomials
from quotient import (automaton_for, build_automaton, dims_for_result, graded_dims, is_finite,
                      multiplication_table, normal_words)
from words import Alphabet, deglex_key, is_subword, iter_words

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)

DEFAULT = CompletionConfig(max_degree=20, max_iterations=50)

FINITE_FIXTURES = [
    (S2_BASIS, S2_NORMAL_WORDS, "abc"),
    (M2_JORDAN_BASIS, M2_JORDAN_NORMAL_WORDS, "abcd"),
    (M2_TRIPLE_BASIS, M2_TRIPLE_NORMAL_WORDS, "abcd"),
    (M2_TETRAD_BASIS, M2_TETRAD_NORMAL_WORDS, "abcd"),
    (A2_JORDAN_BASIS, A2_JORDAN_NORMAL_WORDS, "abcd"),
]

# A2 operations whose envelope has the 15-element Jordan-type basis
A2_JORDAN_TYPE = [
    "jordan-0", "jordan-1", "jordan-half",
    "anti-jordan-inf", "anti-jordan-neg1", "anti-jordan-2",
    "fourth-inf", "fourth-0", "fourth-1", "fourth-neg1", "fourth-2", "fourth-half",
    "cyclic-commutator", "weakly-commutative", "weakly-anticommutative",
]


# (operation, algorithm summary, dimension or graded prefix) for A1 = a(1,1)
A1_ENVELOPES = [
    ("symmetric-sum", "4", [1, 2, 4, 4, 5]),
    ("alternating-sum", "0", [1, 2, 4, 8, 16, 32]),
    ("cyclic-sum", "4", [1, 2, 4, 4, 5]),
    ("lie-inf", "2", [1, 2, 4, 6, 9, 12]),
    ("lie-half", "2", [1, 2, 4, 6, 9, 12]),
    ("jordan-inf", "6,4 | 4", 5),
    ("jordan-0", "6", 9),
    ("jordan-1", "6", 9),
    ("jordan-half", "6,4 | 4", 5),
    ("anti-jordan-inf", "2", [1, 2, 4, 6, 9, 12]),
    ("anti-jordan-neg1", "2,2 | 4,2 | 4", 5),
    ("anti-jordan-half", "2", [1, 2, 4, 6, 9, 12]),
    ("anti-jordan-2", "2,2 | 4,2 | 4", 5),
    ("fourth-inf", "6,4 | 4", 5),
    ("fourth-0", "6", 9),
    ("fourth-1", "6", 9),
    ("fourth-neg1", "6,5 | 4", 5),
    ("fourth-2", "6,5 | 4", 5),
    ("fourth-half", "6,4 | 4", 5),
    ("cyclic-commutator", "4,4 | 4", 5),
    ("weakly-commutative", "8,2 | 4", 5),
    ("weakly-anticommutative", "4,4 | 4", 5),
]

# the same for A2 = a(1,2)
A2_ENVELOPES = [
    ("symmetric-sum", "20", [1, 4, 16, 44, 131, 344]),
    ("alternating-sum", "4", [1, 4, 16, 60, 225, 840]),
    ("cyclic-sum", "24,40 | 59,724 | 62", 26),
    ("lie-inf", "20,24 | 16", [1, 4, 14, 36, 85, 176]),
    ("lie-half", "20,26 | 12", [1, 4, 10, 20, 35, 56]),
    ("jordan-inf", "40,32 | 20", 19),
    ("jordan-0", "40,20 | 27,4 | 15", 10),
    ("jordan-1", "40,19 | 27,6 | 15", 10),
    ("jordan-half", "40,94 | 15", 10),
    ("anti-jordan-inf", "24,76 | 15", 10),
    ("anti-jordan-neg1", "24,37 | 23,6 | 15", 10),
    ("anti-jordan-half", "24,32 | 12", [1, 4, 8, 12, 18, 24]),
    ("anti-jordan-2", "24,37 | 23,4 | 15", 10),
    ("fourth-inf", "40,140 | 15", 10),
    ("fourth-0", "44,88 | 15", 10),
    ("fourth-1", "44,76 | 15", 10),
    ("fourth-neg1", "44,209 | 15", 10),
    ("fourth-2", "44,227 | 15", 10),
    ("fourth-half", "44,184 | 15", 10),
    ("cyclic-commutator", "40,86 | 15", 10),
    ("weakly-commutative", "60,15 | 15", 10),
    ("weakly-anticommutative", "44,41 | 15", 10),
]

A3_ENVELOPES = [
    ("lie-inf", "70,140 | 51", [1, 6, 30, 110, 360, 1026]),
    ("lie-half", "70,147 | 39", [1, 6, 24, 74, 195, 456]),
    ("symmetric-sum", "56", [1, 6, 36, 160, 750, 3240]),
    ("alternating-sum", "20", [1, 6, 36, 196, 1071, 5796]),
    ("jordan-inf", "126,107 | 54", 69),
    ("jordan-0", "126,97 | 71,9 | 32", 17),
    ("jordan-1", "126,93 | 71,18 | 32", 17),
    ("anti-jordan-half", "90,107 | 36", [1, 6, 18, 36, 72, 120]),
]


def naive_dims(forbidden, size, n_max):
    """Count words avoiding every forbidden factor by listing them all."""
    return [sum(1 for w in iter_words(size, n) if not any(is_subword(f, w) for f in forbidden))
            for n in range(n_max + 1)]


def series_coefficients(expr, x, n_max):
    expansion = sympy.series(expr, x, 0, n_max + 1).removeO()
    return [int(expansion.coeff(x, n)) for n in range(n_max + 1)]


def envelope_result(p, q, op, cfg=DEFAULT):
    presentation = envelope_presentation(a_pq_system(p, q), builtin_operation(op))
    return complete(presentation, cfg)


def assert_prefix(result, prefix):
    """The graded prefix matches and lies inside the degree guarantee."""
    dims = dims_for_result(result, len(prefix) - 1)
    assert dims.dims == prefix
    assert dims.guaranteed_upto is None or dims.guaranteed_upto >= len(prefix) - 1


def check_envelope(p, q, op, summary, expected):
    result = envelope_result(p, q, op)
    assert result.status is CompletionStatus.COMPLETE
    assert result.algorithm_summary() == summary
    a = automaton_for(result.basis, result.alphabet)
    if isinstance(expected, int):
        assert is_finite(a)
        assert len(normal_words(a)) == expected
    else:
        assert not is_finite(a)
        assert_prefix(result, expected)


def test_automaton_for_s2():
    """Forbidding the eight leading monomials leaves 1, a, b, c, ac"""
    alphabet = Alphabet.of("abc")
    a = automaton_for(polys(S2_BASIS, "abc"), alphabet)
    assert is_finite(a)
    assert normal_words(a) == words(S2_NORMAL_WORDS, "abc")
    assert a.accepts(alphabet.word("ac"))
    assert not a.accepts(alphabet.word("acb"))


def test_automaton_edge_cases():
    """No relations accepts everything; forbidding the only letter leaves 1"""
    alphabet = Alphabet.of("ab")
    free = build_automaton([], alphabet)
    assert not is_finite(free)
    assert graded_dims(free, 5).dims == [1, 2, 4, 8, 16, 32]
    one_letter = build_automaton([(0,)], Alphabet.of("a"))
    assert is_finite(one_letter)
    assert normal_words(one_letter) == [()]
    assert graded_dims(build_automaton([], Alphabet.of("abcd")), 4).dims == [1, 4, 16, 64, 256]
    with pytest.raises(UnitIdealError):
        build_automaton([()], alphabet)


def test_nondecreasing_words():
    """Forbidding x_i x_j for i > j leaves the nondecreasing words"""
    alphabet = Alphabet.of("abcd")
    forbidden = [(i, j) for i in range(4) for j in range(i)]
    a = build_automaton(forbidden, alphabet)
    for w in normal_words(a, up_to=4):
        assert list(w) == sorted(w)
    assert graded_dims(a, 8).dims == [comb(n + 3, 3) for n in range(9)]


def test_normal_words_of_finite_fixtures():
    """Each listed basis leaves exactly the listed normal words, in deglex order"""
    for basis, listed, letters in FINITE_FIXTURES:
        a = automaton_for(polys(basis, letters), Alphabet.of(letters))
        assert is_finite(a)
        found = normal_words(a)
        assert found == sorted(words(listed, letters), key=deglex_key)
        assert found == sorted(found, key=deglex_key)


def test_infinite_language_needs_a_bound():
    """Listing every normal word of an infinite quotient is refused"""
    a = automaton_for(polys(ABA_GENERATORS, "ab"), Alphabet.of("ab"))
    assert not is_finite(a)
    with pytest.raises(InfiniteQuotientError):
        normal_words(a)
    assert len(normal_words(a, up_to=3)) == 1 + 2 + 4 + 7


def test_dims_match_naive_enumeration():
    """Path counting agrees with brute force up to degree 6"""
    fixtures = [(basis, letters) for basis, _, letters in FINITE_FIXTURES]
    fixtures.append((ABA_GENERATORS, "ab"))
    for basis, letters in fixtures:
        G = polys(basis, letters)
        a = automaton_for(G, Alphabet.of(letters))
        assert graded_dims(a, 6).dims == naive_dims([g.lm for g in G], len(letters), 6)
    rng = random.Random(31)
    for _ in range(10):
        forbidden = [tuple(rng.randrange(3) for _ in range(rng.randint(2, 4))) for _ in range(4)]
        a = build_automaton(forbidden, Alphabet.of("abc"))
        assert graded_dims(a, 6).dims == naive_dims(forbidden, 3, 6)


def test_graded_dims_export(tmp_path):
    """CSV has a degree,dim header and one row per degree"""
    dims = graded_dims(build_automaton([], Alphabet.of("ab")), 3)
    path = tmp_path / "dims.csv"
    dims.write_csv(str(path))
    assert path.read_text().splitlines() == ["degree,dim", "0,1", "1,2", "2,4", "3,8"]
    assert dims.to_dict() == {"dims": [1, 2, 4, 8], "guaranteed_upto": None}


def test_truncated_dims_are_exact_below_the_cap():
    """aba - ba truncated at 8 agrees with a finer run and with the pattern basis below degree 8"""
    presentation = Presentation(Alphabet.of("ab"), tuple(polys(ABA_GENERATORS, "ab")))
    coarse = dims_for_result(complete(presentation, CompletionConfig(max_degree=8)), 7)
    fine = dims_for_result(complete(presentation, CompletionConfig(max_degree=14)), 7)
    assert coarse.guaranteed_upto == 7
    assert coarse.dims == fine.dims
    pattern = [(0,) + (1,) * k + (0,) for k in range(1, 8)]
    assert coarse.dims == naive_dims(pattern, 2, 7)


def test_multiplication_table_m2_jordan():
    """The 9 x 9 table of the M2 Jordan envelope, entry for entry"""
    result = complete(Presentation(Alphabet.of("abcd"), tuple(polys(M2_JORDAN_BASIS, "abcd"))), DEFAULT)
    table = multiplication_table(result)
    assert table.dimension == 9
    expected = [row.split() for row in M2_JORDAN_TABLE.strip().splitlines()]
    for i in range(9):
        for j in range(9):
            listed = expected[i][j].replace(".", "·")
            assert table.entry_text(i, j) == listed, f"entry ({i + 1}, {j + 1})"
    # b·a = b - ab
    assert table.vector(2, 1)[2] == 1 and table.vector(2, 1)[5] == -1
    frame = table.to_frame()
    assert frame.loc["4", "3"] == "2+5-8"
    assert table.to_text().startswith("u1 = 1, u2 = a")


def test_unit_row():
    """1·u_j = u_j and u_j·1 = u_j"""
    result = complete(Presentation(Alphabet.of("abc"), tuple(polys(S2_BASIS, "abc"))), DEFAULT)
    table = multiplication_table(result)
    for j in range(table.dimension):
        assert table.entries[0][j] == {j: 1}
        assert table.entries[j][0] == {j: 1}


def test_associativity_of_finite_quotients():
    """(u_i u_j) u_k = u_i (u_j u_k) on every finite fixture"""
    rng = random.Random(5)
    for basis, _, letters in FINITE_FIXTURES:
        result = complete(Presentation(Alphabet.of(letters), tuple(polys(basis, letters))), DEFAULT)
        table = multiplication_table(result)
        n = table.dimension
        if n <= 12:
            assert table.is_associative()
        else:
            triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(200)]
            assert table.is_associative(triples)


def test_table_errors():
    """Incomplete bases are refused; infinite quotients need a window"""
    presentation = Presentation(Alphabet.of("ab"), tuple(polys(ABA_GENERATORS, "ab")))
    truncated = complete(presentation, CompletionConfig(max_degree=6))
    with pytest.raises(IncompleteBasisError):
        multiplication_table(truncated)

    free = complete(Presentation(Alphabet.of("ab"), (polys("ba - ab", "ab")[0],)), DEFAULT)
    assert free.is_complete
    with pytest.raises(InfiniteQuotientError):
        multiplication_table(free)
    window = multiplication_table(free, basis=[(), (0,), (1,), (0, 1)])
    assert window.window
    assert window.entry_text(1, 2) == "4"
    assert window.entry_text(3, 3) == "?"

    unit = complete(Presentation(Alphabet.of("a"), tuple(polys("a - 1\na^2", "a"))), DEFAULT)
    assert unit.status is CompletionStatus.UNIT_IDEAL
    assert multiplication_table(unit).dimension == 0
    assert dims_for_result(unit, 3).dims == [0, 0, 0, 0]


@pytest.mark.parametrize("op,summary,expected", A1_ENVELOPES, ids=[row[0] for row in A1_ENVELOPES])
def test_a1_envelopes(op, summary, expected):
    """Every trilinear operation on A1: algorithm summary and dimension or graded prefix"""
    check_envelope(1, 1, op, summary, expected)


@pytest.mark.parametrize("op,summary,expected", A2_ENVELOPES, ids=[row[0] for row in A2_ENVELOPES])
def test_a2_envelopes(op, summary, expected):
    """Every trilinear operation on A2: algorithm summary and dimension or graded prefix"""
    check_envelope(1, 2, op, summary, expected)


def test_a2_jordan_type_operations():
    """Every Jordan-type operation on A2 reaches the same 15-element basis"""
    expected = sort_polynomials(polys(A2_JORDAN_BASIS, "abcd"))
    for op in A2_JORDAN_TYPE:
        result = envelope_result(1, 2, op)
        assert result.status is CompletionStatus.COMPLETE, op
        assert result.basis == expected, op


def test_a2_finite_envelopes_contain_the_system():
    """Every letter of the finite cyclic-sum and jordan-inf envelopes is a normal word"""
    for op in ("cyclic-sum", "jordan-inf"):
        result = envelope_result(1, 2, op)
        words_found = normal_words(automaton_for(result.basis, result.alphabet))
        assert all((i,) in words_found for i in range(4)), op


def test_anti_jordan_half_dims():
    """(n+1)(n+3)/2 in odd degrees and (n+2)^2/2 in even degrees"""
    result = envelope_result(1, 2, "anti-jordan-half")
    expected = [1] + [(n + 1) * (n + 3) // 2 if n % 2 else (n + 2) ** 2 // 2 for n in range(1, 11)]
    assert_prefix(result, expected)


def test_alternating_sum_generating_function():
    """Dims are the coefficients of 1/((1 - x^2)(1 - 4x + x^2))"""
    x = sympy.Symbol("x")
    expected = series_coefficients(1 / ((1 - x ** 2) * (1 - 4 * x + x ** 2)), x, 7)
    assert_prefix(envelope_result(1, 2, "alternating-sum"), expected)


def test_lie_inf_generating_function():
    """Dims are the coefficients of 1/((1 - x)^4 (1 - x^2)^4)"""
    x = sympy.Symbol("x")
    expected = series_coefficients(1 / ((1 - x) ** 4 * (1 - x ** 2) ** 4), x, 11)
    assert_prefix(envelope_result(1, 2, "lie-inf"), expected)


def test_truncated_prefix_stays_inside_its_guarantee():
    """A degree-capped run of symmetric-sum on A2 reports the same prefix as the complete basis"""
    prefix = A2_ENVELOPES[0][2]
    result = envelope_result(1, 2, "symmetric-sum", CompletionConfig(max_degree=len(prefix)))
    assert_prefix(result, prefix)


@pytest.mark.slow
@pytest.mark.parametrize("op,summary,expected", A3_ENVELOPES, ids=[row[0] for row in A3_ENVELOPES])
def test_a3_envelopes(op, summary, expected):
    """Operations on A3 with a known outcome"""
    check_envelope(1, 3, op, summary, expected)


@pytest.mark.slow
def test_a3_cyclic_sum_hits_a_bound():
    result = envelope_result(1, 3, "cyclic-sum", CompletionConfig(max_degree=12, max_basis_size=2000))
    assert result.hit_bound
    logger.info(f"cyclic sum on A3 stopped with {result.status_text()} at {len(result.basis)} generators")


def test_table_text_entries():
    """Coefficients other than ±1 are written as c*k"""
    result = complete(Presentation(Alphabet.of("ab"), tuple(polys("a^2 - 2b\nab\nba\nb^2", "ab"))), DEFAULT)
    table = multiplication_table(result)
    assert [table.alphabet.format(w) for w in table.basis_words] == ["1", "a", "b"]
    assert table.entry_text(1, 1) == "2*3"
    assert re.fullmatch(r"[·0-9+\-*]+", table.entry_text(2, 2))
