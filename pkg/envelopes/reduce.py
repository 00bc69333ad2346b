"""
Normal forms with respect to a set of polynomials, and self-reduction.

Reduction strategy (fixed, so every run is reproducible):
  - always eliminate the deglex-greatest reducible monomial;
  - among the generators whose leading monomial divides it, use the one
    with the smallest leading monomial, ties broken by the total
    polynomial order;
  - use the leftmost occurrence of that leading monomial.
"""

import heapq
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from arith import QQ, Coefficient, RationalField
from poly import Polynomial, sort_polynomials, standard_form
from words import Ordering, Word, compare_deglex, find_occurrences

logger = logging.getLogger("envelopes.reduce")


@dataclass(frozen=True)
class ReductionStep:
    """One subtraction f <- f - coefficient * left * g * right."""

    position: int
    generator_index: int
    occurrence: int
    eliminated: Word
    left: Word
    right: Word
    coefficient: Coefficient
    subtracted: Polynomial

    def coefficient_text(self) -> str:
        return self.subtracted.field.to_text(self.coefficient)

    def to_dict(self) -> dict:
        alphabet = self.subtracted.alphabet
        return {
            "position": self.position,
            "generator": self.generator_index,
            "occurrence": self.occurrence,
            "eliminated": alphabet.format(self.eliminated),
            "left": alphabet.format(self.left),
            "right": alphabet.format(self.right),
            "coefficient": self.coefficient_text(),
            "subtracted": self.subtracted.to_text(),
        }


@dataclass
class ReductionTrace:
    input: Polynomial
    output: Polynomial
    steps: List[ReductionStep] = field(default_factory=list)

    def verify(self) -> bool:
        """input - sum(subtracted) == output, exactly."""
        acc = self.input
        for step in self.steps:
            acc = acc - step.subtracted
        return acc == self.output

    def to_dict(self) -> dict:
        return {
            "input": self.input.to_text(),
            "output": self.output.to_text(),
            "steps": [step.to_dict() for step in self.steps],
        }

    def to_text(self) -> str:
        lines = [f"f0 = {self.input}"]
        for n, step in enumerate(self.steps, start=1):
            alphabet = self.input.alphabet
            lines.append(
                f"f{n} = f{n - 1} - ({step.coefficient_text()}) "
                f"{alphabet.format(step.left)}*g{step.generator_index + 1}*{alphabet.format(step.right)}"
                f"   [eliminates {alphabet.format(step.eliminated)}]"
            )
        lines.append(f"NF = {self.output}")
        return "\n".join(lines)


def _heap_key(w: Word):
    # heapq is a min-heap; this key pops the deglex-greatest word first
    return (-len(w), tuple(-x for x in w))


def _support_position(terms, w: Word) -> int:
    """Number of support monomials above w in deglex order."""
    return sum(1 for m in terms if compare_deglex(m, w) is Ordering.GREATER)


class GeneratorIndex:
    """
    Leading-monomial lookup over a list of nonzero generators.

    `find` answers: which generator reduces this word under the fixed
    strategy, and where.
    """

    def __init__(self, generators: Sequence[Polynomial], field: Optional[RationalField] = None):
        self.generators = list(generators)
        self.field = field or (self.generators[0].field if self.generators else QQ)
        by_lm: Dict[Word, List[int]] = {}
        for i, g in enumerate(self.generators):
            if not g:
                raise ValueError("cannot reduce with the zero polynomial")
            by_lm.setdefault(g.lm, []).append(i)
        for indices in by_lm.values():
            if len(indices) > 1:
                indices.sort(key=lambda i: (self.generators[i].sort_key(), i))
        self.by_lm = by_lm
        self.lengths = sorted({len(w) for w in by_lm})

    def __len__(self) -> int:
        return len(self.generators)

    def find(self, w: Word, limit: Optional[int] = None) -> Optional[Tuple[int, int]]:
        """
        Return (generator index, occurrence) or None when w is irreducible.

        Args:
            w: The monomial to test
            limit: Only generators with index < limit are eligible
        """
        by_lm = self.by_lm
        n = len(w)
        for length in self.lengths:
            if length > n:
                return None
            best = None
            best_hit = None
            for p in range(n - length + 1):
                s = w[p:p + length]
                candidates = by_lm.get(s)
                if candidates is None or (best is not None and s >= best):
                    continue
                if limit is None:
                    gi = candidates[0]
                else:
                    gi = next((i for i in candidates if i < limit), None)
                    if gi is None:
                        continue
                best = s
                best_hit = (gi, p)
            if best_hit is not None:
                return best_hit
        return None

    def reducible(self, w: Word) -> bool:
        return self.find(w) is not None


def reduce_terms(terms: Dict[Word, Coefficient], index: GeneratorIndex, limit: Optional[int] = None,
                 steps: Optional[list] = None) -> Dict[Word, Coefficient]:
    """
    Reduce a monomial -> coefficient mapping in place and return it.

    When `steps` is a list, raw step records
    (position, generator, occurrence, word, coefficient) are appended.
    """
    field = index.field
    add, mul, negate, equal = field.add, field.mul, field.negate, field.equal
    zero, one = field.zero(), field.one()
    heap = [(_heap_key(w), w) for w in terms]
    heapq.heapify(heap)
    generators = index.generators
    last = None
    while heap:
        _, w = heapq.heappop(heap)
        if w == last:
            continue
        last = w
        c = terms.get(w)
        if c is None:
            continue
        hit = index.find(w, limit)
        if hit is None:
            continue
        gi, p = hit
        g = generators[gi]
        g_terms = g.terms
        lm, lc = g_terms[0]
        alpha = c if equal(lc, one) else mul(c, field.invert(lc))
        if steps is not None:
            steps.append((_support_position(terms, w), gi, p, w, alpha))
        left, right = w[:p], w[p + len(lm):]
        del terms[w]
        for m, gc in g_terms[1:]:
            k = left + m + right
            old = terms.get(k)
            if old is None:
                terms[k] = negate(mul(alpha, gc))
                heapq.heappush(heap, (_heap_key(k), k))
            else:
                new = add(old, negate(mul(alpha, gc)))
                if equal(new, zero):
                    del terms[k]
                else:
                    terms[k] = new
    return terms


def normal_form(f: Polynomial, G: Sequence[Polynomial],
                rng: Optional[random.Random] = None) -> Tuple[Polynomial, ReductionTrace]:
    """
    Normal form of f with respect to G, with the full reduction trace.

    Args:
        f: Polynomial to reduce
        G: Ordered list of nonzero (normally monic) polynomials
        rng: When given, reduction choices are made at random instead of by
             the fixed strategy (used to test strategy independence)

    Returns:
        Tuple of (normal form, trace)
    """
    if rng is not None:
        return _normal_form_randomized(f, G, rng)
    if not G or not f:
        return f, ReductionTrace(f, f)
    index = GeneratorIndex(G, f.field)
    raw_steps: list = []
    terms = reduce_terms(dict(f.terms), index, steps=raw_steps)
    h = Polynomial.from_dict(f.alphabet, terms, f.field)
    trace = ReductionTrace(f, h, [_make_step(G, *raw) for raw in raw_steps])
    return h, trace


def _make_step(G, position, gi, p, w, alpha) -> ReductionStep:
    g = G[gi]
    left, right = w[:p], w[p + len(g.lm):]
    return ReductionStep(position, gi, p, w, left, right, alpha,
                         g.sandwich(left, right).scale(alpha))


def _normal_form_randomized(f: Polynomial, G: Sequence[Polynomial],
                            rng: random.Random) -> Tuple[Polynomial, ReductionTrace]:
    field = f.field
    zero = field.zero()
    terms = dict(f.terms)
    steps = []
    while True:
        options = [(w, gi, p) for w in terms for gi, g in enumerate(G)
                   for p in (find_occurrences(g.lm, w) if g.lm else range(len(w) + 1))]
        if not options:
            break
        w, gi, p = rng.choice(options)
        alpha = field.mul(terms[w], field.invert(G[gi].lc))
        step = _make_step(G, _support_position(terms, w), gi, p, w, alpha)
        for m, c in step.subtracted.terms:
            new = field.add(terms.get(m, zero), field.negate(c))
            if field.equal(new, zero):
                terms.pop(m, None)
            else:
                terms[m] = new
        steps.append(step)
    h = Polynomial.from_dict(f.alphabet, terms, field)
    return h, ReductionTrace(f, h, steps)


def reduce_with_index(f: Polynomial, index: GeneratorIndex, limit: Optional[int] = None) -> Polynomial:
    """Normal form without a trace, against a prebuilt index."""
    if not f:
        return f
    return Polynomial.from_dict(f.alphabet, reduce_terms(dict(f.terms), index, limit), f.field)


def self_reduce(G: Sequence[Polynomial]) -> List[Polynomial]:
    """
    Convert G to a self-reduced set generating the same ideal.

    Passes repeat until nothing changes: sort, replace each g_i by the
    standard form of its normal form against g_1 .. g_{i-1}, drop zeros.
    A nonzero constant anywhere collapses the result to [1].
    """
    current = sort_polynomials(standard_form(g) for g in G if g)
    if not current:
        return []
    alphabet, field = current[0].alphabet, current[0].field
    passes = 0
    while True:
        passes += 1
        if any(g.is_constant() for g in current):
            logger.debug("self_reduce: constant generator, unit ideal")
            return [Polynomial.one(alphabet, field)]
        index = GeneratorIndex(current)
        reduced = []
        for i, g in enumerate(current):
            h = standard_form(reduce_with_index(g, index, limit=i))
            if not h:
                continue
            if h.is_constant():
                logger.debug("self_reduce: generator reduced to a constant, unit ideal")
                return [Polynomial.one(alphabet, field)]
            reduced.append(h)
        reduced = sort_polynomials(reduced)
        if reduced == current:
            logger.debug(f"self_reduce: {len(current)} generators after {passes} passes")
            return current
        current = reduced
