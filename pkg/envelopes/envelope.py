"""
Universal associative envelope presentations.

Given structure constants for a d-dimensional system with an n-ary
operation, the envelope is F<b_1..b_d> modulo the relations
    ω(b_i1, ..., b_in) = Σ_j c^j b_j
with ω expanded as a combination of permuted associative products.
Basis element i is written with the i-th letter a, b, c, ... unless the
structure constants carry their own names.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import sympy

from errors import StructureConstantsError
from groebner import Presentation
from poly import Polynomial, normalize, sort_polynomials, standard_form
from reduce import self_reduce
from words import Alphabet, iter_words

logger = logging.getLogger("envelopes.envelope")

IndexTuple = Tuple[int, ...]


@dataclass(frozen=True)
class MultilinearOperation:
    """
    ω(a_1, ..., a_n) = Σ coefficient · a_σ(1) ⋯ a_σ(n).

    Each term is (coefficient, σ) with σ a 0-based tuple of argument
    positions, so (0, 2, 1) is the monomial a_1 a_3 a_2.
    """

    name: str
    arity: int
    terms: Tuple[Tuple[Fraction, IndexTuple], ...]

    def __post_init__(self):
        if self.arity < 1:
            raise StructureConstantsError(f"{self.name}: arity must be positive")
        seen = set()
        for coefficient, sigma in self.terms:
            if sorted(sigma) != list(range(self.arity)):
                raise StructureConstantsError(f"{self.name}: {sigma} is not a permutation of {self.arity} slots")
            if sigma in seen:
                raise StructureConstantsError(f"{self.name}: permutation {sigma} repeated")
            seen.add(sigma)
        if not any(c for c, _ in self.terms):
            raise StructureConstantsError(f"{self.name}: operation has no nonzero term")

    def text(self) -> str:
        letters = "abcdefghijklmnopqrstuvwxyz"
        alphabet = Alphabet.of(letters[:self.arity])
        return normalize([(c, sigma) for c, sigma in self.terms], alphabet).to_text()


@dataclass(frozen=True)
class StructureConstants:
    """
    table maps 0-based index tuples to coefficient vectors of length d;
    missing tuples are zero.
    """

    dimension: int
    arity: int
    table: Mapping[IndexTuple, Tuple[Fraction, ...]]
    names: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if self.dimension < 1 or self.arity < 1:
            raise StructureConstantsError("dimension and arity must be positive")
        if self.names is not None and len(self.names) != self.dimension:
            raise StructureConstantsError(f"{len(self.names)} names for dimension {self.dimension}")
        for key, vector in self.table.items():
            if len(key) != self.arity or any(not 0 <= i < self.dimension for i in key):
                raise StructureConstantsError("index tuple out of range", key)
            if len(vector) != self.dimension:
                raise StructureConstantsError(f"coefficient vector has length {len(vector)}", key)

    @classmethod
    def from_products(cls, dimension: int, arity: int,
                      products: Mapping[IndexTuple, Mapping[int, Fraction]],
                      names: Optional[Sequence[str]] = None) -> "StructureConstants":
        """Build from sparse {tuple: {j: c}} data."""
        table = {}
        for key, combination in products.items():
            vector = [Fraction(0)] * dimension
            for j, c in combination.items():
                if not 0 <= j < dimension:
                    raise StructureConstantsError(f"basis index {j} out of range", key)
                vector[j] += Fraction(c)
            if any(vector):
                table[tuple(key)] = tuple(vector)
        return cls(dimension, arity, table, tuple(names) if names else None)

    def product(self, key: IndexTuple) -> Tuple[Fraction, ...]:
        vector = self.table.get(tuple(key))
        return vector if vector is not None else (Fraction(0),) * self.dimension

    def alphabet(self) -> Alphabet:
        if self.names:
            return Alphabet.of(self.names)
        return Alphabet.standard(self.dimension)

    def is_symmetric_under(self, permutations: Sequence[IndexTuple]) -> bool:
        """True when permuting the arguments by each σ leaves every product unchanged."""
        for key in iter_words(self.dimension, self.arity):
            value = self.product(key)
            for sigma in permutations:
                if self.product(tuple(key[s] for s in sigma)) != value:
                    return False
        return True


def _linear_part(alphabet: Alphabet, vector: Sequence[Fraction]) -> List[Tuple[Fraction, tuple]]:
    return [(-c, (j,)) for j, c in enumerate(vector) if c]


def validate_lie(sc: StructureConstants):
    """
    Raises:
        StructureConstantsError: arity not 2, [x_i, x_i] ≠ 0, antisymmetry or
        Jacobi failure, with the witnessing indices
    """
    if sc.arity != 2:
        raise StructureConstantsError(f"a Lie bracket is binary, got arity {sc.arity}")
    d = sc.dimension
    zero = (Fraction(0),) * d
    for i in range(d):
        if sc.product((i, i)) != zero:
            raise StructureConstantsError("[x_i, x_i] is not zero", (i + 1, i + 1))
        for j in range(d):
            if sc.product((i, j)) != tuple(-c for c in sc.product((j, i))):
                raise StructureConstantsError("bracket is not antisymmetric", (i + 1, j + 1))

    def bracket_vector(u: Sequence[Fraction], k: int) -> List[Fraction]:
        out = [Fraction(0)] * d
        for m, c in enumerate(u):
            if c:
                for l, e in enumerate(sc.product((m, k))):
                    out[l] += c * e
        return out

    for i, j, k in itertools.combinations(range(d), 3):
        total = [Fraction(0)] * d
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for l, e in enumerate(bracket_vector(sc.product((a, b)), c)):
                total[l] += e
        if any(total):
            raise StructureConstantsError("Jacobi identity fails", (i + 1, j + 1, k + 1))


def lie_presentation(sc: StructureConstants) -> Presentation:
    """Relations x_i x_j − x_j x_i − [x_i, x_j] for i > j, in standard form."""
    validate_lie(sc)
    alphabet = sc.alphabet()
    generators = []
    for i in range(sc.dimension):
        for j in range(i):
            raw = [(1, (i, j)), (-1, (j, i))] + _linear_part(alphabet, sc.product((i, j)))
            generators.append(standard_form(normalize(raw, alphabet)))
    logger.debug(f"lie presentation: {len(generators)} generators on {sc.dimension} letters")
    return Presentation(alphabet, tuple(sort_polynomials(generators)), "U(lie)")


def jordan_presentation(sc: StructureConstants) -> Presentation:
    """Relations x_i x_j + x_j x_i − x_i∘x_j for j ≤ i, in standard form (no ½ factor)."""
    if sc.arity != 2:
        raise StructureConstantsError(f"a Jordan product is binary, got arity {sc.arity}")
    for i in range(sc.dimension):
        for j in range(i):
            if sc.product((i, j)) != sc.product((j, i)):
                raise StructureConstantsError("product is not symmetric", (i + 1, j + 1))
    alphabet = sc.alphabet()
    generators = []
    for i in range(sc.dimension):
        for j in range(i + 1):
            raw = [(1, (i, j)), (1, (j, i))] + _linear_part(alphabet, sc.product((i, j)))
            g = standard_form(normalize(raw, alphabet))
            if g:
                generators.append(g)
    return Presentation(alphabet, tuple(sort_polynomials(generators)), "U(jordan)")


def nary_generators(op: MultilinearOperation, sc: StructureConstants) -> List[Polynomial]:
    """The d^n raw relations, one per index tuple, zeros included."""
    if op.arity != sc.arity:
        raise StructureConstantsError(f"operation {op.name} has arity {op.arity}, structure constants {sc.arity}")
    alphabet = sc.alphabet()
    generators = []
    for key in iter_words(sc.dimension, sc.arity):
        raw = [(c, tuple(key[s] for s in sigma)) for c, sigma in op.terms]
        raw += _linear_part(alphabet, sc.product(key))
        generators.append(normalize(raw, alphabet))
    return generators


def nary_presentation(op: MultilinearOperation, sc: StructureConstants) -> Presentation:
    """The self-reduced envelope relations for an n-ary operation."""
    raw = nary_generators(op, sc)
    reduced = self_reduce(raw)
    logger.info(f"{op.name}: {len(raw)} raw generators self-reduce to {len(reduced)}")
    return Presentation(sc.alphabet(), tuple(reduced), f"U({op.name})")


@dataclass(frozen=True)
class MatrixSystem:
    """
    A span of m×m rational matrices closed under the n-fold associative
    product (arity None means closed under the ordinary product, hence
    under every n-fold product).
    """

    name: str
    basis: Tuple[sympy.ImmutableMatrix, ...]
    arity: Optional[int] = None

    def __post_init__(self):
        basis = tuple(sympy.ImmutableMatrix(b) for b in self.basis)
        object.__setattr__(self, "basis", basis)
        if not basis:
            raise StructureConstantsError(f"{self.name}: empty basis")
        m = basis[0].rows
        for b in basis:
            if b.shape != (m, m):
                raise StructureConstantsError(f"{self.name}: basis matrices must all be {m}x{m}")
        columns = sympy.Matrix.hstack(*[b.reshape(m * m, 1) for b in basis])
        if columns.rank() != len(basis):
            raise StructureConstantsError(f"{self.name}: basis is linearly dependent")
        _, pivots = columns.T.rref()
        object.__setattr__(self, "_columns", columns)
        object.__setattr__(self, "_pivots", list(pivots))
        object.__setattr__(self, "_solver", columns.extract(list(pivots), list(range(len(basis)))).inv())
        n = self.arity or 2
        for key in iter_words(len(basis), n):
            product = basis[key[0]]
            for i in key[1:]:
                product = product * basis[i]
            self.coordinates(product, key)

    @property
    def size(self) -> int:
        return self.basis[0].rows

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, matrix, key=None) -> Tuple[Fraction, ...]:
        """
        Coordinates of a matrix in the basis.

        Raises:
            StructureConstantsError: the matrix lies outside the span
        """
        vec = sympy.Matrix(matrix).reshape(self.size * self.size, 1)
        coords = self._solver * vec.extract(self._pivots, [0])
        if self._columns * coords != vec:
            raise StructureConstantsError(f"{self.name}: result outside the span", key)
        return tuple(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coords)


def matrix_unit(size: int, row: int, col: int) -> sympy.ImmutableMatrix:
    m = sympy.zeros(size, size)
    m[row, col] = 1
    return sympy.ImmutableMatrix(m)


def matrix_structure_constants(sys: MatrixSystem, op: MultilinearOperation) -> StructureConstants:
    """Evaluate ω on every tuple of basis matrices and read off coordinates."""
    if sys.arity is not None and sys.arity != op.arity:
        raise StructureConstantsError(f"{sys.name} is {sys.arity}-ary, {op.name} is {op.arity}-ary")
    products: Dict[IndexTuple, sympy.ImmutableMatrix] = {}

    def word_product(word: IndexTuple):
        cached = products.get(word)
        if cached is None:
            cached = sys.basis[word[0]] if len(word) == 1 else word_product(word[:-1]) * sys.basis[word[-1]]
            products[word] = cached
        return cached

    table = {}
    for key in iter_words(sys.dimension, op.arity):
        total = sympy.zeros(sys.size, sys.size)
        for c, sigma in op.terms:
            total += sympy.Rational(c.numerator, c.denominator) * word_product(tuple(key[s] for s in sigma))
        vector = sys.coordinates(total, tuple(i + 1 for i in key))
        if any(vector):
            table[key] = vector
    logger.debug(f"{sys.name} with {op.name}: {len(table)} nonzero products")
    return StructureConstants(sys.dimension, op.arity, table)


_LIE_TERMS = {((0, 1), Fraction(1)), ((1, 0), Fraction(-1))}
_JORDAN_TERMS = {((0, 1), Fraction(1)), ((1, 0), Fraction(1))}


def envelope_presentation(system, op: MultilinearOperation) -> Presentation:
    """
    Presentation of the envelope of a matrix system or structure constants
    under op. The bracket ab − ba goes through lie_presentation and the
    product ab + ba through jordan_presentation; everything else through
    nary_presentation.
    """
    sc = matrix_structure_constants(system, op) if isinstance(system, MatrixSystem) else system
    terms = {(sigma, Fraction(c)) for c, sigma in op.terms if c}
    if op.arity == 2 and terms == _LIE_TERMS:
        presentation = lie_presentation(sc)
    elif op.arity == 2 and terms == _JORDAN_TERMS:
        presentation = jordan_presentation(sc)
    else:
        presentation = nary_presentation(op, sc)
    name = getattr(system, "name", None) or "sc"
    return Presentation(presentation.alphabet, presentation.generators, f"U({name}, {op.name})")
