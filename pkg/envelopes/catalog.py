"""
Builtin multilinear operations and systems, addressed by CLI keys.

Trilinear operations are written on the letters a, b, c as the monomials
of ω(a, b, c); the tetrad uses a, b, c, d.
"""

import logging
import re
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from envelope import MatrixSystem, MultilinearOperation, StructureConstants, matrix_unit
from errors import CatalogError, ParseError
from presentation_file import parse_polynomial
from words import Alphabet

logger = logging.getLogger("envelopes.catalog")

System = Union[MatrixSystem, StructureConstants]

OPERATIONS = {
    # bilinear
    "lie-bracket": "ab - ba",
    "jordan-product": "ab + ba",
    # trilinear
    "symmetric-sum": "abc + acb + bac + bca + cab + cba",
    "alternating-sum": "abc - acb - bac + bca + cab - cba",
    "cyclic-sum": "abc + bca + cab",
    "lie-inf": "abc - acb - bca + cba",
    "lie-half": "abc + acb - bca - cba",
    "jordan-inf": "abc + cba",
    "jordan-0": "abc + bac",
    "jordan-1": "abc + acb",
    "jordan-half": "abc + 2acb + 2cab + cba",
    "anti-jordan-inf": "abc - 2acb + 2cab - cba",
    "anti-jordan-neg1": "abc - acb",
    "anti-jordan-half": "abc - cba",
    "anti-jordan-2": "abc - bac",
    "fourth-inf": "abc - acb - bac",
    "fourth-0": "abc - acb + bca",
    "fourth-1": "abc - bac + cab",
    "fourth-neg1": "abc + bac + cab",
    "fourth-2": "abc + acb + bca",
    "fourth-half": "abc + acb + bac",
    "cyclic-commutator": "abc - bca",
    "weakly-commutative": "abc + acb + bac - cba",
    "weakly-anticommutative": "abc + acb - bca - cab",
    # quadrilinear
    "tetrad": "abcd + dcba",
}

TRILINEAR = [key for key, text in OPERATIONS.items() if len(text.split()[0]) == 3]

SYSTEMS = ("sl2", "s2", "m2-units", "a(p,q)", "block(d1,...,dk)")

_DEFAULT_OPERATION = {"sl2": "lie-bracket", "s2": "jordan-product", "m2-units": "jordan-product"}
_DEFAULT_BY_ARITY = {2: "jordan-product", 3: "jordan-inf", 4: "tetrad"}

_A_PQ_RE = re.compile(r"^a\(\s*(\d+)\s*,\s*(\d+)\s*\)$")
_BLOCK_RE = re.compile(r"^block\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")


def operation_from_text(name: str, text: str) -> MultilinearOperation:
    """
    Read ω from its expansion, e.g. "abc - cba". The arity is the length of
    the first monomial; every monomial must use each letter exactly once.
    """
    monomials = re.findall(r"[a-zA-Z]+", text)
    if not monomials:
        raise CatalogError(f"{name}: no monomials in {text!r}")
    arity = len(monomials[0])
    alphabet = Alphabet.standard(arity)
    try:
        poly = parse_polynomial(text, alphabet)
    except ParseError as e:
        raise CatalogError(f"{name}: {e.render()}") from None
    terms = tuple((c, tuple(w)) for w, c in poly.terms)
    return MultilinearOperation(name, arity, terms)


def builtin_operation(key: str) -> MultilinearOperation:
    text = OPERATIONS.get(key)
    if text is None:
        raise CatalogError(f"unknown operation {key!r}; choose from {', '.join(OPERATIONS)}")
    return operation_from_text(key, text)


def sl2() -> StructureConstants:
    """[h,e] = 2e, [h,f] = −2f, [e,f] = h over the letters h, e, f."""
    two = Fraction(2)
    products = {
        (0, 1): {1: two}, (1, 0): {1: -two},
        (0, 2): {2: -two}, (2, 0): {2: two},
        (1, 2): {0: Fraction(1)}, (2, 1): {0: Fraction(-1)},
    }
    return StructureConstants.from_products(3, 2, products, ("h", "e", "f"))


def s2() -> StructureConstants:
    """Symmetric 2×2 matrices with x∘y = xy + yx in the basis a = E11, b = E22, c = E12 + E21."""
    one, two = Fraction(1), Fraction(2)
    products = {
        (0, 0): {0: two},
        (0, 2): {2: one}, (2, 0): {2: one},
        (1, 1): {1: two},
        (1, 2): {2: one}, (2, 1): {2: one},
        (2, 2): {0: two, 1: two},
    }
    return StructureConstants.from_products(3, 2, products)


def m2_units() -> MatrixSystem:
    """The matrix units E11, E12, E21, E22 as a, b, c, d."""
    return MatrixSystem("m2-units", tuple(matrix_unit(2, i, j) for i in range(2) for j in range(2)))


def block_system(dims: Sequence[int], name: Optional[str] = None) -> MatrixSystem:
    """
    The simple associative n-ary system for block sizes (d_1, ..., d_{n-1}).

    Matrices of size D = d_1 + ... + d_{n-1} act on V_1 ⊕ ... ⊕ V_{n-1} and
    send V_i into V_{i+1} and V_{n-1} back into V_1, so the nonzero blocks
    are (i+1, i) and (1, n-1). The basis is the matrix units inside those
    blocks in row-major order.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise CatalogError(f"block sizes must be positive integers, got {dims}")
    k = len(dims)
    owner = [b for b, d in enumerate(dims) for _ in range(d)]
    allowed = {((b + 1) % k, b) for b in range(k)}
    size = len(owner)
    units = tuple(
        matrix_unit(size, i, j)
        for i in range(size) for j in range(size)
        if (owner[i], owner[j]) in allowed
    )
    label = name or "block(" + ",".join(str(d) for d in dims) + ")"
    return MatrixSystem(label, units, arity=k + 1)


def a_pq_system(p: int, q: int) -> MatrixSystem:
    """
    The associative triple system of (p+q)×(p+q) matrices supported on the
    two off-diagonal blocks; basis the 2pq off-diagonal matrix units in
    row-major order.
    """
    if p < 1 or q < 1:
        raise CatalogError(f"a(p,q) needs p, q >= 1, got a({p},{q})")
    return block_system((p, q), f"a({p},{q})")


def _block_default(arity: int) -> str:
    default = _DEFAULT_BY_ARITY.get(arity)
    if default is None:
        raise CatalogError(f"no default {arity}-ary operation; name one with --op")
    return default


def builtin_system(key: str, operation: Optional[str] = None) -> Tuple[System, MultilinearOperation]:
    """
    Resolve a system key and pair it with an operation (the system's
    default when none is named).

    Raises:
        CatalogError: unknown system or operation key
    """
    key = key.strip().lower()
    a_pq = _A_PQ_RE.match(key)
    block = _BLOCK_RE.match(key)
    if a_pq:
        system: System = a_pq_system(int(a_pq.group(1)), int(a_pq.group(2)))
        default = "jordan-inf"
    elif block:
        system = block_system([int(d) for d in block.group(1).split(",")])
        default = operation or _block_default(system.arity)
    elif key == "sl2":
        system, default = sl2(), _DEFAULT_OPERATION[key]
    elif key == "s2":
        system, default = s2(), _DEFAULT_OPERATION[key]
    elif key == "m2-units":
        system, default = m2_units(), _DEFAULT_OPERATION[key]
    else:
        raise CatalogError(f"unknown system {key!r}; choose from {', '.join(SYSTEMS)}")
    op = builtin_operation(operation or default)
    logger.debug(f"builtin system {key} with {op.name}")
    return system, op
