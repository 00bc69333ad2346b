"""
Compositions of overlapping leading monomials and the completion loop.

complete() repeats: self-reduce the generating set, compute the normal
forms of all compositions, add the nonzero ones. It stops when no new
compositions appear or when one of the configured bounds trips.
"""

import concurrent.futures
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from arith import Coefficient
from errors import InconclusiveComparisonError, OverlapError
from poly import Polynomial, sort_polynomials, standard_form
from reduce import GeneratorIndex, reduce_with_index, self_reduce
from words import Alphabet, Overlap, Word, proper_overlaps

logger = logging.getLogger("envelopes.groebner")


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    generators: Tuple[Polynomial, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.alphabet != self.alphabet:
                raise ValueError(f"generator {g} is not over the presentation alphabet")


class CompletionStatus(Enum):
    COMPLETE = "Complete"
    TRUNCATED_AT_DEGREE = "TruncatedAtDegree"
    ITERATION_LIMIT = "IterationLimit"
    SIZE_LIMIT = "SizeLimit"
    UNIT_IDEAL = "UnitIdeal"


@dataclass(frozen=True)
class CompletionConfig:
    """
    Bounds for complete(). At least one bound must be set unless
    `unbounded=True` says that running forever is acceptable.
    """

    max_degree: Optional[int] = None
    max_iterations: Optional[int] = None
    max_basis_size: Optional[int] = None
    unbounded: bool = False
    snapshots: bool = False
    workers: int = 1

    def __post_init__(self):
        for name in ("max_degree", "max_iterations", "max_basis_size"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValueError(f"{name} must be a positive integer, got {value}")
        if self.workers < 1:
            raise ValueError(f"workers must be at least 1, got {self.workers}")
        if not self.unbounded and self.max_degree is None and self.max_iterations is None \
                and self.max_basis_size is None:
            raise ValueError("set at least one completion bound or pass unbounded=True")

    @classmethod
    def without_bounds(cls, **kwargs) -> "CompletionConfig":
        return cls(unbounded=True, **kwargs)

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "max_iterations": self.max_iterations,
            "max_basis_size": self.max_basis_size,
            "snapshots": self.snapshots,
            "workers": self.workers,
        }


@dataclass
class IterationStats:
    iteration: int
    generators_in: int
    raw_compositions: int
    distinct_nonzero_compositions: int
    skipped_by_degree: int
    generators_out: int
    seconds: float = 0.0

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "generators_in": self.generators_in,
            "raw_compositions": self.raw_compositions,
            "distinct_nonzero_compositions": self.distinct_nonzero_compositions,
            "skipped_by_degree": self.skipped_by_degree,
            "generators_out": self.generators_out,
        }


@dataclass
class CompletionResult:
    alphabet: Alphabet
    basis: List[Polynomial]
    status: CompletionStatus
    degree_bound: Optional[int] = None
    iterations: List[IterationStats] = field(default_factory=list)
    snapshots: List[List[Polynomial]] = field(default_factory=list)
    most_complicated: Optional[Polynomial] = None

    @property
    def is_complete(self) -> bool:
        return self.status is CompletionStatus.COMPLETE

    @property
    def hit_bound(self) -> bool:
        return self.status not in (CompletionStatus.COMPLETE, CompletionStatus.UNIT_IDEAL)

    def status_text(self) -> str:
        if self.status is CompletionStatus.TRUNCATED_AT_DEGREE:
            return f"TruncatedAtDegree({self.degree_bound})"
        return self.status.value

    def algorithm_summary(self) -> str:
        """Iteration pairs "x,y | x,y | z" as generators-in, compositions."""
        parts = []
        for stats in self.iterations:
            if stats.distinct_nonzero_compositions:
                parts.append(f"{stats.generators_in},{stats.distinct_nonzero_compositions}")
            else:
                parts.append(f"{stats.generators_in}")
        return " | ".join(parts)

    def to_dict(self) -> dict:
        data = {
            "status": self.status_text(),
            "alphabet": list(self.alphabet.letters),
            "basis": [g.to_text() for g in self.basis],
            "iterations": [s.to_dict() for s in self.iterations],
        }
        if self.snapshots:
            data["snapshots"] = [[g.to_text() for g in snap] for snap in self.snapshots]
        if self.most_complicated is not None:
            data["most_complicated"] = self.most_complicated.to_text()
        return data

    def to_text(self) -> str:
        lines = [f"g{i} = {g}" for i, g in enumerate(self.basis, start=1)]
        lines.append(f"status: {self.status_text()}  ({len(self.basis)} generators; {self.algorithm_summary()})")
        return "\n".join(lines)


def composition(g: Polynomial, h: Polynomial, o: Overlap) -> Polynomial:
    """g·u2 − u1·h for LM(g) = u1·v and LM(h) = v·u2."""
    if g.lm != o.left + o.overlap or h.lm != o.overlap + o.right:
        raise OverlapError(f"overlap {o} does not match LM({g}) and LM({h})")
    return g.sandwich((), o.right) - h.sandwich(o.left, ())


def _prefix_index(G: Sequence[Polynomial]) -> Dict[Word, List[int]]:
    prefixes: Dict[Word, List[int]] = {}
    for j, h in enumerate(G):
        lm = h.lm
        for k in range(1, len(lm)):
            prefixes.setdefault(lm[:k], []).append(j)
    return prefixes


def _overlap_tasks(G: Sequence[Polynomial], max_degree: Optional[int]) -> Tuple[List[Tuple[int, int, Overlap]], int]:
    """(g index, h index, overlap) for every proper overlap, and the skipped count."""
    prefixes = _prefix_index(G)
    tasks = []
    skipped = 0
    for i, g in enumerate(G):
        lm = g.lm
        partners = set()
        for k in range(1, len(lm)):
            partners.update(prefixes.get(lm[-k:], ()))
        for j in sorted(partners):
            for o in proper_overlaps(lm, G[j].lm):
                if max_degree is not None and len(o.word()) > max_degree:
                    skipped += 1
                    continue
                tasks.append((i, j, o))
    return tasks, skipped


def _composition_terms(g: Polynomial, h: Polynomial, o: Overlap) -> Dict[Word, Coefficient]:
    # monic g and h: leading words cancel, only tails contribute
    field = g.field
    add, negate, equal, zero = field.add, field.negate, field.equal, field.zero()
    terms: Dict[Word, Coefficient] = {}
    for w, c in g.terms[1:]:
        key = w + o.right
        terms[key] = add(terms.get(key, zero), c)
    for w, c in h.terms[1:]:
        key = o.left + w
        new = add(terms.get(key, zero), negate(c))
        if equal(new, zero):
            terms.pop(key, None)
        else:
            terms[key] = new
    return terms


def _evaluate(alphabet: Alphabet, G: Sequence[Polynomial], index: GeneratorIndex, tasks) -> List[Polynomial]:
    found = []
    for i, j, o in tasks:
        terms = _composition_terms(G[i], G[j], o)
        if not terms:
            continue
        f = Polynomial.from_dict(alphabet, terms, index.field)
        h = standard_form(reduce_with_index(f, index))
        if h:
            logger.debug(f"composition of g{i + 1} and g{j + 1} over {alphabet.format(o.overlap)}: {h}")
            found.append(h)
    return found


def _evaluate_chunk(alphabet: Alphabet, G: Sequence[Polynomial], tasks) -> List[Polynomial]:
    return _evaluate(alphabet, G, GeneratorIndex(G), tasks)


def _compositions(alphabet: Alphabet, G: Sequence[Polynomial], max_degree: Optional[int] = None,
                  workers: int = 1) -> Tuple[List[Polynomial], int, int]:
    tasks, skipped = _overlap_tasks(G, max_degree)
    if not tasks:
        return [], skipped, 0
    if workers > 1 and len(tasks) > 4 * workers:
        chunk = -(-len(tasks) // (4 * workers))
        pieces = [tasks[n:n + chunk] for n in range(0, len(tasks), chunk)]
        found: List[Polynomial] = []
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            futures = [executor.submit(_evaluate_chunk, alphabet, list(G), piece) for piece in pieces]
            for future in concurrent.futures.as_completed(futures):
                found.extend(future.result())
    else:
        found = _evaluate(alphabet, G, GeneratorIndex(G), tasks)
    distinct = sort_polynomials(set(found))
    return distinct, skipped, len(tasks)


def all_compositions(G: Sequence[Polynomial], max_degree: Optional[int] = None) -> List[Polynomial]:
    """
    Normal forms (in standard form) of all compositions of a self-reduced set.

    Args:
        G: Self-reduced, monic generators
        max_degree: Skip overlaps whose overlap word is longer than this

    Returns:
        Distinct nonzero results, sorted by the total polynomial order

    Raises:
        OverlapError: a leading monomial is a proper factor of another one
    """
    G = list(G)
    if not G:
        return []
    return _compositions(G[0].alphabet, G, max_degree)[0]


def _most_complicated(polys: Sequence[Polynomial]) -> Optional[Polynomial]:
    if not polys:
        return None
    return max(polys, key=lambda p: (len(p), p.sort_key()))


def complete(p: Presentation, cfg: CompletionConfig) -> CompletionResult:
    """
    Complete a presentation to a (possibly truncated) Gröbner basis.

    Args:
        p: Generators of the ideal
        cfg: Bounds and options

    Returns:
        CompletionResult; basis is self-reduced whatever the status
    """
    alphabet = p.alphabet
    label = p.label or "presentation"
    G = self_reduce(p.generators)
    result = CompletionResult(alphabet, G, CompletionStatus.COMPLETE)
    logger.info(f"{label}: {len(p.generators)} generators self-reduce to {len(G)}")
    most_complicated = None
    iteration = 0
    while True:
        if len(G) == 1 and G[0].is_constant():
            result.status = CompletionStatus.UNIT_IDEAL
            break
        if cfg.max_iterations is not None and iteration >= cfg.max_iterations:
            result.status = CompletionStatus.ITERATION_LIMIT
            logger.warning(f"{label}: iteration limit {cfg.max_iterations} reached with {len(G)} generators")
            break
        iteration += 1
        started = time.perf_counter()
        comps, skipped, raw = _compositions(alphabet, G, cfg.max_degree, cfg.workers)
        stats = IterationStats(iteration, len(G), raw, len(comps), skipped, len(G))
        result.iterations.append(stats)
        candidate = _most_complicated(comps)
        if candidate is not None and (most_complicated is None
                                      or (len(candidate), candidate.sort_key())
                                      > (len(most_complicated), most_complicated.sort_key())):
            most_complicated = candidate
        if not comps:
            stats.seconds = time.perf_counter() - started
            if skipped:
                result.status = CompletionStatus.TRUNCATED_AT_DEGREE
                result.degree_bound = cfg.max_degree
                logger.warning(f"{label}: {skipped} overlaps above degree {cfg.max_degree} were skipped")
            logger.info(f"{label}: iteration {iteration}: {len(G)} generators, no new compositions")
            break
        if cfg.max_basis_size is not None and len(G) + len(comps) > cfg.max_basis_size:
            stats.seconds = time.perf_counter() - started
            result.status = CompletionStatus.SIZE_LIMIT
            logger.warning(f"{label}: {len(G)} + {len(comps)} generators exceeds size limit {cfg.max_basis_size}")
            break
        G = self_reduce(G + comps)
        stats.generators_out = len(G)
        stats.seconds = time.perf_counter() - started
        logger.info(f"{label}: iteration {iteration}: {stats.generators_in} generators, "
                    f"{stats.distinct_nonzero_compositions} compositions, {len(G)} after self-reduction "
                    f"({stats.seconds:.2f}s)")
        if cfg.snapshots:
            result.snapshots.append(list(G))
    result.basis = G
    result.most_complicated = most_complicated
    return result


def is_groebner(G: Sequence[Polynomial]) -> bool:
    """True iff every composition of G reduces to zero against G."""
    return not all_compositions(G)


def is_member(f: Polynomial, result: CompletionResult) -> Optional[bool]:
    """
    Ideal membership of f.

    Returns:
        True/False when decided; None when the basis is not complete and
        f does not reduce to zero.
    """
    if result.status is CompletionStatus.UNIT_IDEAL:
        return True
    h = reduce_with_index(f, GeneratorIndex(result.basis)) if result.basis else f
    if not h:
        return True
    return False if result.is_complete else None


def ideals_equal(G1: Sequence[Polynomial], G2: Sequence[Polynomial], cfg: CompletionConfig) -> bool:
    """
    Decide whether G1 and G2 generate the same two-sided ideal.

    Reduction to zero against any generating set proves membership; a
    nonzero normal form disproves it only against a complete basis.

    Raises:
        InconclusiveComparisonError: when neither direction can be settled
    """
    G1, G2 = list(G1), list(G2)
    alphabet = (G1 or G2)[0].alphabet if (G1 or G2) else Alphabet(())
    first = complete(Presentation(alphabet, G1, "left"), cfg)
    second = complete(Presentation(alphabet, G2, "right"), cfg)
    undecided = 0
    for generators, result in ((G2, first), (G1, second)):
        for g in generators:
            member = is_member(g, result)
            if member is False:
                return False
            if member is None:
                undecided += 1
    if undecided:
        raise InconclusiveComparisonError(
            f"{undecided} generators neither reduce to zero nor can be excluded "
            f"(statuses {first.status_text()}, {second.status_text()})")
    return True
