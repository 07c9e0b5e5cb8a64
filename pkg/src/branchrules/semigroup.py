"""Finitely generated subsemigroups of the branching semigroup.

A generator set spans a semigroup of signatures.  Its elements of highest
weight ``lam`` are counted with weights ``dim V_h(lam')``; when that sum,
``d(lam)``, agrees with ``dim V_g(lam)`` on a large enough simplex of
dominant weights the generators account for every branching multiplicity
(two polynomials of degree ``k`` agreeing on the simplex of size ``k`` are
equal).  The discovery loop adds slices at failing weights until this holds.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .branching import Embedding, branching_slice
from .essential import DEFAULT_BUDGET, MonomialOrderSpec, Signature
from .hwmodule import DEFAULT_DIM_CAP, HWModule, build_module
from .rootsys import RootSystem, Weight
from .toric import Binomial, is_toric_relation, lex_key, toric_ideal

DEFAULT_ELEMENT_BUDGET = 5_000_000

CERTIFIED = "certified-on-simplex"
COUNTEREXAMPLE = "counterexample-found"
BUDGET = "budget-exhausted"


class ElementBudgetExceeded(RuntimeError):
    pass


@dataclass
class GeneratorSet:
    """Distinct signatures together with their restricted highest weights."""

    g: RootSystem
    h: RootSystem
    signatures: List[Signature]
    h_weights: List[Weight]
    emb: Optional[Embedding] = None
    element_budget: int = DEFAULT_ELEMENT_BUDGET
    _memo: Dict[Weight, FrozenSet[Tuple[Signature, Weight]]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(set(self.signatures)) != len(self.signatures):
            raise ValueError("duplicate generator signatures")
        if len(self.h_weights) != len(self.signatures):
            raise ValueError("one restricted weight per generator is required")
        for s in self.signatures:
            if not any(s.hw) and not s.is_zero():
                raise ValueError(f"generator {s} has zero highest weight but nonzero exponents")

    @classmethod
    def from_signatures(cls, emb: Embedding, sigs: Sequence[Signature]) -> "GeneratorSet":
        """Restricted weights computed as the restriction of the weight of v(sigma)."""
        return cls(emb.g, emb.h, list(sigs), [emb.restrict(s.weight(emb.g)) for s in sigs], emb)

    def __len__(self) -> int:
        return len(self.signatures)

    def add(self, sig: Signature, h_weight: Weight) -> None:
        if sig in self.signatures:
            raise ValueError(f"{sig} is already a generator")
        self.signatures.append(sig)
        self.h_weights.append(tuple(h_weight))
        self._memo.clear()

    def highest_weights(self) -> List[Weight]:
        out = []
        for s in self.signatures:
            if s.hw not in out:
                out.append(s.hw)
        return out

    def matrix_points(self) -> List[Tuple[int, ...]]:
        return [s.vector() for s in self.signatures]


def _zero_element(gens: GeneratorSet) -> Tuple[Signature, Weight]:
    return Signature.zero(gens.g.rank, gens.g.n_positive), (0,) * gens.h.rank


def _elements(gens: GeneratorSet, lam: Weight) -> FrozenSet[Tuple[Signature, Weight]]:
    hit = gens._memo.get(lam)
    if hit is not None:
        return hit
    if not any(lam):
        res = frozenset([_zero_element(gens)])
        gens._memo[lam] = res
        return res
    out: Set[Tuple[Signature, Weight]] = set()
    for sig, hwp in zip(gens.signatures, gens.h_weights):
        if not any(sig.hw):
            continue
        rest = tuple(a - b for a, b in zip(lam, sig.hw))
        if any(x < 0 for x in rest):
            continue
        for s2, w2 in _elements(gens, rest):
            out.add((sig + s2, tuple(a + b for a, b in zip(hwp, w2))))
        if len(out) > gens.element_budget:
            raise ElementBudgetExceeded(f"more than {gens.element_budget} elements at {lam}")
    res = frozenset(out)
    gens._memo[lam] = res
    return res


def enumerate_elements(gens: GeneratorSet, lam: Sequence[int]) -> Set[Signature]:
    """Distinct signatures of highest weight ``lam`` in the generated semigroup."""
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise ValueError(f"{lam} is not dominant")
    return {s for s, _ in _elements(gens, lam)}


def elements_with_weights(gens: GeneratorSet, lam: Sequence[int]) -> Dict[Signature, Weight]:
    return {s: w for s, w in _elements(gens, tuple(lam))}


def d_of_lambda(gens: GeneratorSet, lam: Sequence[int]) -> int:
    lam = tuple(int(x) for x in lam)
    h = gens.h
    return sum(_hdim(h, w) for _, w in _elements(gens, lam))


@lru_cache(maxsize=None)
def _hdim_cached(series: str, rank: int, w: Weight) -> int:
    from .rootsys import build_root_system

    return build_root_system(series, rank).weyl_dim(w)


def _hdim(h: RootSystem, w: Weight) -> int:
    if any(x < 0 for x in w):
        return 0
    return _hdim_cached(h.series, h.rank, tuple(w))


@lru_cache(maxsize=None)
def _gdim_cached(series: str, rank: int, w: Weight) -> int:
    from .rootsys import build_root_system

    return build_root_system(series, rank).weyl_dim(w)


def simplex_points(rank: int, k: int) -> List[Weight]:
    """Dominant weights with coordinate sum at most ``k``, by increasing sum."""
    out = []
    for total in range(k + 1):
        for combo in combinations_with_replacement(range(rank), total):
            w = [0] * rank
            for i in combo:
                w[i] += 1
            out.append(tuple(w))
    return out


@dataclass
class CertificateReport:
    degree_bound: int
    points_tested: int
    failing: List[Weight]
    verdict: str
    points_total: int = 0
    note: str = ""

    def __post_init__(self):
        if self.verdict == CERTIFIED and self.failing:
            raise ValueError("certified report with failures")
        if self.verdict == COUNTEREXAMPLE and not self.failing:
            raise ValueError("counterexample verdict without failures")

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED


def certify(
    gens: GeneratorSet,
    k: Optional[int] = None,
    stop_after: Optional[int] = None,
) -> CertificateReport:
    """Compare ``d(lam)`` with ``dim V_g(lam)`` on every dominant ``lam`` with
    coordinate sum ``<= k`` (default: the number of positive roots, the
    degree of the dimension polynomial).  ``stop_after`` ends the scan after
    that many failures."""
    g = gens.g
    if k is None:
        k = g.n_positive
    if k < 1:
        raise ValueError("degree bound must be at least 1")
    pts = simplex_points(g.rank, k)
    failing: List[Weight] = []
    tested = 0
    for lam in pts:
        try:
            d = d_of_lambda(gens, lam)
        except ElementBudgetExceeded as exc:
            return CertificateReport(k, tested, failing, BUDGET, len(pts), str(exc))
        tested += 1
        if d != _gdim_cached(g.series, g.rank, lam):
            failing.append(lam)
            if stop_after is not None and len(failing) >= stop_after:
                break
    verdict = COUNTEREXAMPLE if failing else CERTIFIED
    return CertificateReport(k, tested, failing, verdict, len(pts))


# -- discovery ------------------------------------------------------------------------


@dataclass
class DiscoveryResult:
    generators: GeneratorSet
    report: CertificateReport
    processed: List[Weight]
    iterations: int
    status: str  # certified-on-simplex | counterexample-found | budget-exhausted
    log: List[str] = field(default_factory=list)


ModuleFactory = Callable[[RootSystem, Weight], HWModule]


def _slice_job(args):
    emb, order, lam, budget, dim_cap, cache_dir, route = args
    M = build_module(emb.g, lam, dim_cap=dim_cap, cache_dir=cache_dir)
    return branching_slice(M, emb, order, budget, route=route)


def discover_generators(
    emb: Embedding,
    order: MonomialOrderSpec,
    initial: Optional[Sequence[Sequence[int]]] = None,
    iteration_cap: int = 10,
    k: Optional[int] = None,
    dim_cap: Optional[int] = DEFAULT_DIM_CAP,
    budget: Optional[int] = DEFAULT_BUDGET,
    cache_dir: Optional[str] = None,
    module_factory: Optional[ModuleFactory] = None,
    progress: Optional[Callable[[str], None]] = None,
    route: str = "direct",
    threads: int = 1,
) -> DiscoveryResult:
    """Grow a generator set from slices until the certificate passes.

    Each round computes the slices of all pending highest weights (by
    increasing degree) and keeps the slice signatures not already produced by
    the current generators, then certifies; the failing weights of least
    coordinate sum become the next pending weights.

    ``threads > 1`` computes the slices of one round in worker processes
    (only with the default module factory); generators are merged in the
    same order either way, so the result does not depend on it.
    """
    g = emb.g
    if initial is None:
        initial = [g.fundamental_weight(i + 1) for i in range(g.rank)]
    pending = sorted({tuple(int(x) for x in w) for w in initial}, key=lambda w: (sum(w), [-x for x in w]))
    gens = GeneratorSet(g, emb.h, [], [], emb)
    processed: List[Weight] = []
    log: List[str] = []

    def say(msg):
        log.append(msg)
        if progress:
            progress(msg)

    default_factory = module_factory is None
    if module_factory is None:
        def module_factory(rs, lam):
            return build_module(rs, lam, dim_cap=dim_cap, cache_dir=cache_dir)

    report = None
    it = 0
    while True:
        it += 1
        todo = [lam for lam in pending if lam not in processed]
        if threads > 1 and len(todo) > 1 and default_factory:
            with ProcessPoolExecutor(max_workers=min(threads, len(todo))) as ex:
                slices = list(ex.map(_slice_job, [(emb, order, lam, budget, dim_cap, cache_dir, route) for lam in todo]))
        else:
            slices = [branching_slice(module_factory(g, lam), emb, order, budget, route=route) for lam in todo]
        for lam, sl in zip(todo, slices):
            have = enumerate_elements(gens, lam)
            added = 0
            for e in sl.entries:
                if e.signature not in have:
                    gens.add(e.signature, e.h_weight)
                    added += 1
            processed.append(lam)
            say(f"slice {lam}: {len(sl.entries)} signatures, {added} new")
        report = certify(gens, k)
        say(f"round {it}: {len(gens)} generators, verdict {report.verdict}, {len(report.failing)} failing of {report.points_tested}")
        if report.verdict != COUNTEREXAMPLE:
            return DiscoveryResult(gens, report, processed, it, report.verdict, log)
        if it >= iteration_cap:
            return DiscoveryResult(gens, report, processed, it, BUDGET, log)
        least = min(sum(w) for w in report.failing)
        pending = [w for w in report.failing if sum(w) == least]
        if all(w in processed for w in pending):
            # slices already taken yet the count still fails: not resolvable by this loop
            return DiscoveryResult(gens, report, processed, it, COUNTEREXAMPLE, log)


# -- relations -------------------------------------------------------------------------


@dataclass
class SemigroupPresentation:
    generators: GeneratorSet
    relations: List[Binomial]
    variable_order: str = "lex"
    reduced: bool = True

    def relation_strings(self, symbol: str = "s") -> List[str]:
        return [format_relation(r, symbol) for r in self.relations]

    def text(self, symbol: str = "s") -> str:
        lines = [f"{i}. {s}" for i, s in enumerate(self.relation_strings(symbol), 1)]
        return "\n".join(lines)

    def machine_lines(self) -> List[str]:
        return [f"REL {','.join(map(str, u))} = {','.join(map(str, w))}" for u, w in self.relations]

    def to_json(self) -> str:
        return json.dumps(
            {
                "generators": [str(s) for s in self.generators.signatures],
                "relations": [{"u": list(u), "w": list(w)} for u, w in self.relations],
                "variable_order": self.variable_order,
            },
            indent=1,
        )


def format_relation(rel: Binomial, symbol: str = "s") -> str:
    def side(v):
        terms = []
        for i, c in enumerate(v):
            if c:
                terms.append(f"{symbol}{i + 1}" if c == 1 else f"{c}{symbol}{i + 1}")
        return " + ".join(terms) if terms else "0"

    return f"{side(rel[0])} = {side(rel[1])}"


def compute_relations(gens: GeneratorSet, variable_order: str = "lex") -> SemigroupPresentation:
    """Reduced Groebner basis of the toric ideal of the generators, for the
    lexicographic order with generator 1 largest.  Every relation is checked
    as an identity of signature vectors before it is returned."""
    if variable_order != "lex":
        raise ValueError("only the lexicographic variable order is supported")
    pts = gens.matrix_points()
    if not pts:
        return SemigroupPresentation(gens, [], variable_order)
    grading = [sum(s.hw) for s in gens.signatures]
    if any(x <= 0 for x in grading):
        raise ValueError("generators must have nonzero highest weights")
    rels = toric_ideal(pts, grading, lex_key)
    for r in rels:
        if not is_toric_relation(pts, r):
            raise RuntimeError(f"relation {r} does not hold")
        if any(a and b for a, b in zip(r[0], r[1])):
            raise RuntimeError(f"relation {r} is not reduced")
    return SemigroupPresentation(gens, rels, variable_order)


def multiplicity(pres_or_gens, lam: Sequence[int], lam_h: Sequence[int]) -> int:
    """Number of semigroup elements of highest weight ``lam`` restricting to ``lam_h``."""
    gens = pres_or_gens.generators if isinstance(pres_or_gens, SemigroupPresentation) else pres_or_gens
    lam_h = tuple(lam_h)
    return sum(1 for _, w in _elements(gens, tuple(lam)) if w == lam_h)
