"""
The quotient F<X>/I seen through a Gröbner basis of I.

Normal words are the words that contain no leading monomial of the basis
as a factor. They are recognized by an Aho-Corasick automaton over the
leading monomials: a state is dead once some forbidden word has been
completed, so a word is normal iff its walk never enters a dead state.
Finiteness is acyclicity of the live part of that automaton, and graded
dimensions are path counts.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from arith import QQ, Coefficient, RationalField
from errors import IncompleteBasisError, InfiniteQuotientError, UnitIdealError
from groebner import CompletionResult, CompletionStatus
from poly import Polynomial
from reduce import GeneratorIndex, reduce_with_index
from words import Alphabet, Word, deglex_key

logger = logging.getLogger("envelopes.quotient")


class NormalWordAutomaton:
    """
    Deterministic automaton with one transition per (state, letter).

    State 0 is the root. `dead[s]` is True when the path to s ends with a
    forbidden word.
    """

    def __init__(self, alphabet: Alphabet, transitions: List[List[int]], dead: List[bool]):
        self.alphabet = alphabet
        self.transitions = transitions
        self.dead = dead

    @property
    def size(self) -> int:
        return len(self.transitions)

    def accepts(self, w: Word) -> bool:
        state = 0
        for letter in w:
            state = self.transitions[state][letter]
            if self.dead[state]:
                return False
        return True


def build_automaton(forbidden: Iterable[Word], alphabet: Alphabet) -> NormalWordAutomaton:
    """
    Build the factor-avoiding automaton for a set of forbidden words.

    Raises:
        UnitIdealError: if the empty word is forbidden
    """
    k = len(alphabet)
    children: List[Dict[int, int]] = [{}]
    terminal = [False]
    for w in forbidden:
        if not w:
            raise UnitIdealError("the empty word is forbidden: the ideal is the whole algebra")
        alphabet.check(w)
        state = 0
        for letter in w:
            nxt = children[state].get(letter)
            if nxt is None:
                nxt = len(children)
                children[state][letter] = nxt
                children.append({})
                terminal.append(False)
            state = nxt
        terminal[state] = True

    n = len(children)
    fail = [0] * n
    dead = [False] * n
    transitions = [[0] * k for _ in range(n)]
    queue = deque()
    for letter in range(k):
        child = children[0].get(letter)
        if child is not None:
            transitions[0][letter] = child
            queue.append(child)
    while queue:
        state = queue.popleft()
        dead[state] = terminal[state] or dead[fail[state]]
        for letter in range(k):
            child = children[state].get(letter)
            if child is not None:
                fail[child] = transitions[fail[state]][letter]
                transitions[state][letter] = child
                queue.append(child)
            else:
                transitions[state][letter] = transitions[fail[state]][letter]
    logger.debug(f"automaton: {n} states, {sum(dead)} dead")
    return NormalWordAutomaton(alphabet, transitions, dead)


def automaton_for(basis: Sequence[Polynomial], alphabet: Alphabet) -> NormalWordAutomaton:
    """Automaton over the leading monomials of a basis."""
    return build_automaton([g.lm for g in basis], alphabet)


def is_finite(a: NormalWordAutomaton) -> bool:
    """True iff only finitely many words are normal (no live cycle reachable from the root)."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = [WHITE] * a.size
    if a.dead[0]:
        return True
    colour[0] = GREY
    stack = [(0, 0)]
    while stack:
        state, letter = stack.pop()
        if letter == len(a.alphabet):
            colour[state] = BLACK
            continue
        stack.append((state, letter + 1))
        nxt = a.transitions[state][letter]
        if a.dead[nxt]:
            continue
        if colour[nxt] == GREY:
            return False
        if colour[nxt] == WHITE:
            colour[nxt] = GREY
            stack.append((nxt, 0))
    return True


def normal_words(a: NormalWordAutomaton, up_to: Optional[int] = None) -> List[Word]:
    """
    Normal words in deglex order.

    Args:
        a: The automaton
        up_to: Highest degree to list; None lists everything, which
               requires a finite language

    Raises:
        InfiniteQuotientError: up_to is None and the language is infinite
    """
    if up_to is None and not is_finite(a):
        raise InfiniteQuotientError("infinitely many normal words; give a degree bound")
    if a.dead[0]:
        return []
    words: List[Word] = [()]
    level: List[Tuple[Word, int]] = [((), 0)]
    degree = 0
    while level and (up_to is None or degree < up_to):
        degree += 1
        next_level = []
        for w, state in level:
            for letter, nxt in enumerate(a.transitions[state]):
                if not a.dead[nxt]:
                    next_level.append((w + (letter,), nxt))
        words.extend(w for w, _ in next_level)
        level = next_level
    return words


@dataclass
class GradedDims:
    dims: List[int]
    guaranteed_upto: Optional[int] = None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"degree": range(len(self.dims)), "dim": self.dims})

    def write_csv(self, path: str):
        self.to_frame().to_csv(path, index=False)

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "guaranteed_upto": self.guaranteed_upto}


def graded_dims(a: NormalWordAutomaton, n_max: int, guaranteed_upto: Optional[int] = None) -> GradedDims:
    """Number of normal words of each degree 0..n_max, by counting live paths."""
    if a.dead[0]:
        return GradedDims([0] * (n_max + 1), guaranteed_upto)
    counts: Dict[int, int] = {0: 1}
    dims = [1]
    for _ in range(n_max):
        nxt_counts: Dict[int, int] = {}
        for state, count in counts.items():
            for nxt in a.transitions[state]:
                if not a.dead[nxt]:
                    nxt_counts[nxt] = nxt_counts.get(nxt, 0) + count
        counts = nxt_counts
        dims.append(sum(counts.values()))
    return GradedDims(dims, guaranteed_upto)


def dims_for_result(result: CompletionResult, n_max: int) -> GradedDims:
    """Graded dimensions of the associated graded algebra for a completion result."""
    if result.status is CompletionStatus.UNIT_IDEAL:
        return GradedDims([0] * (n_max + 1))
    guarantee = None
    if result.status is CompletionStatus.TRUNCATED_AT_DEGREE:
        guarantee = result.degree_bound - 1
    elif not result.is_complete:
        # no degree guarantee without a degree-truncated or complete basis
        guarantee = -1
    return graded_dims(automaton_for(result.basis, result.alphabet), n_max, guarantee)


@dataclass
class MultiplicationTable:
    """
    entries[i][j] is NF(u_i·u_j) as a sparse {basis index: coefficient} map.
    In a window table a product can leave the window; such entries are None.
    """

    alphabet: Alphabet
    basis_words: List[Word]
    entries: List[List[Optional[Dict[int, Coefficient]]]]
    window: bool = False
    field: RationalField = QQ

    @property
    def dimension(self) -> int:
        return len(self.basis_words)

    def vector(self, i: int, j: int) -> List[Coefficient]:
        entry = self.entries[i][j]
        if entry is None:
            raise ValueError(f"product u{i + 1}·u{j + 1} leaves the basis window")
        vec = [self.field.zero()] * self.dimension
        for k, c in entry.items():
            vec[k] = c
        return vec

    def multiply(self, x: Dict[int, Coefficient], y: Dict[int, Coefficient]) -> Dict[int, Coefficient]:
        """Product of two sparse coefficient vectors."""
        field = self.field
        add, mul, equal, zero = field.add, field.mul, field.equal, field.zero()
        out: Dict[int, Coefficient] = {}
        for i, a in x.items():
            for j, b in y.items():
                entry = self.entries[i][j]
                if entry is None:
                    raise ValueError(f"product u{i + 1}·u{j + 1} leaves the basis window")
                for k, c in entry.items():
                    value = add(out.get(k, zero), mul(mul(a, b), c))
                    if equal(value, zero):
                        out.pop(k, None)
                    else:
                        out[k] = value
        return out

    def is_associative(self, triples: Optional[Iterable[Tuple[int, int, int]]] = None) -> bool:
        n = self.dimension
        one = self.field.one()
        if triples is None:
            triples = ((i, j, k) for i in range(n) for j in range(n) for k in range(n))
        for i, j, k in triples:
            left = self.multiply(self.multiply({i: one}, {j: one}), {k: one})
            right = self.multiply({i: one}, self.multiply({j: one}, {k: one}))
            if left != right:
                logger.warning(f"associativity fails for (u{i + 1}, u{j + 1}, u{k + 1})")
                return False
        return True

    def entry_text(self, i: int, j: int) -> str:
        """Compact form: "3-6", "2+5-8", "2*5", "·" for zero."""
        entry = self.entries[i][j]
        if entry is None:
            return "?"
        if not entry:
            return "·"
        pieces = []
        for k in sorted(entry):
            text = self.field.to_text(entry[k])
            negative = text.startswith("-")
            magnitude = text[1:] if negative else text
            body = str(k + 1) if magnitude == "1" else f"{magnitude}*{k + 1}"
            if pieces:
                pieces.append(("-" if negative else "+") + body)
            else:
                pieces.append(("-" if negative else "") + body)
        return "".join(pieces)

    def to_frame(self) -> pd.DataFrame:
        labels = [str(i + 1) for i in range(self.dimension)]
        rows = [[self.entry_text(i, j) for j in range(self.dimension)] for i in range(self.dimension)]
        return pd.DataFrame(rows, index=labels, columns=labels)

    def to_text(self) -> str:
        legend = ", ".join(f"u{i + 1} = {self.alphabet.format(w)}" for i, w in enumerate(self.basis_words))
        return legend + "\n" + self.to_frame().to_string()

    def to_dict(self) -> dict:
        return {
            "basis": [self.alphabet.format(w) for w in self.basis_words],
            "window": self.window,
            "entries": [
                [None if e is None else {str(k + 1): self.field.to_text(c) for k, c in sorted(e.items())}
                 for e in row]
                for row in self.entries
            ],
        }


def multiplication_table(gb: CompletionResult, basis: Optional[Sequence[Word]] = None) -> MultiplicationTable:
    """
    Structure constants of the quotient: entry (i, j) is NF(u_i·u_j).

    Args:
        gb: A Complete completion result
        basis: Normal words to use; defaults to all of them (finite quotients).
               A partial list produces a window table.

    Raises:
        IncompleteBasisError: gb is not Complete
        InfiniteQuotientError: no basis given and the quotient is infinite
    """
    if gb.status is CompletionStatus.UNIT_IDEAL:
        return MultiplicationTable(gb.alphabet, [], [])
    if not gb.is_complete:
        raise IncompleteBasisError(f"multiplication table needs a Complete basis, status is {gb.status_text()}")
    automaton = automaton_for(gb.basis, gb.alphabet)
    all_words = None
    if basis is None:
        all_words = normal_words(automaton)
        basis = all_words
    basis = sorted(basis, key=deglex_key)
    for w in basis:
        if not automaton.accepts(w):
            raise ValueError(f"{gb.alphabet.format(w)} is not a normal word")
    window = all_words is None and (not is_finite(automaton) or len(basis) != len(normal_words(automaton)))
    position = {w: i for i, w in enumerate(basis)}
    field = gb.basis[0].field if gb.basis else QQ
    index = GeneratorIndex(gb.basis) if gb.basis else None
    entries: List[List[Optional[Dict[int, Coefficient]]]] = []
    for u in basis:
        row = []
        for v in basis:
            product = Polynomial.monomial(gb.alphabet, u + v, field=field)
            nf = reduce_with_index(product, index) if index is not None else product
            entry: Optional[Dict[int, Coefficient]] = {}
            for w, c in nf.terms:
                k = position.get(w)
                if k is None:
                    entry = None
                    break
                entry[k] = c
            row.append(entry)
        entries.append(row)
    logger.info(f"multiplication table: {len(basis)} x {len(basis)}{' (window)' if window else ''}")
    return MultiplicationTable(gb.alphabet, list(basis), entries, window, field)
