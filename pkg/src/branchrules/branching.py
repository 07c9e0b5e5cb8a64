"""Subalgebra embeddings and branching slices.

For ``h`` inside ``g`` and a ``g``-module ``V(lam)``, the functionals on
``V(lam)`` that kill ``f'_k V(lam)`` for every lowering generator ``f'_k`` of
``h`` are the ``h``-lowest vectors of ``V(lam)^*``; there is one for each
``h``-irreducible constituent.  Each such functional has a least signature
(the smallest essential ``sigma`` with ``<omega, v(sigma)> != 0``).  After a
triangular change of basis the least signatures are pairwise distinct; they
form the slice of the branching semigroup at ``lam``.
"""

from __future__ import annotations

import itertools
import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .essential import (
    DEFAULT_BUDGET,
    EssentialBasis,
    MonomialOrderSpec,
    Signature,
    sorted_candidates,
)
from .hwmodule import DEFAULT_DIM_CAP, HWModule, ModuleVector, build_module
from .linalg import IncrementalBasis, SparseVec, axpy, inverse, nullspace
from .rootsys import Root, RootSystem, RootSystemError, Weight, build_root_system

Element = Dict[Tuple, Fraction]  # ('e', root) or ('h', i) -> coefficient


class EmbeddingError(ValueError):
    pass


@dataclass
class Embedding:
    """Images of the Chevalley generators of ``h`` inside ``g``.

    ``restriction[k][i]`` expresses ``h'_k = sum_i restriction[k][i] h_i``, so
    a ``g``-weight ``mu`` restricts to ``(sum_i restriction[k][i] mu_i)_k``.
    For regular embeddings ``h_roots`` lists ``Delta_+(h)`` inside ``Delta_+(g)``.
    """

    g: RootSystem
    h: RootSystem
    e: List[Element]
    f: List[Element]
    hcart: List[Element]
    regular: bool = False
    h_roots: Tuple[Root, ...] = ()
    h_simple: Tuple[Root, ...] = ()
    name: str = ""
    restriction: List[List[Fraction]] = field(init=False)

    def __post_init__(self):
        n = self.g.rank
        self.restriction = []
        for el in self.hcart:
            row = [Fraction(0)] * n
            for key, c in el.items():
                if key[0] != "h":
                    raise EmbeddingError("Cartan images must lie in the Cartan subalgebra")
                row[key[1]] += Fraction(c)
            self.restriction.append(row)

    def restrict(self, mu: Sequence[int]) -> Weight:
        out = []
        for row in self.restriction:
            v = sum(r * m for r, m in zip(row, mu))
            if v.denominator != 1:
                raise EmbeddingError(f"weight {tuple(mu)} restricts to a non-integral weight")
            out.append(int(v))
        return tuple(out)

    @property
    def h_root_indices(self) -> List[int]:
        return sorted(self.g.index[r] for r in self.h_roots)

    def check_serre(self, dim_cap: Optional[int] = DEFAULT_DIM_CAP) -> List[str]:
        """Verify h's Chevalley-Serre relations for the images, acting on V_g(pi_1)."""
        M = build_module(self.g, self.g.fundamental_weight(1), dim_cap=dim_cap)
        return check_generator_relations(M, self)

    def to_dict(self) -> dict:
        def enc(el):
            return [[label_of(k), str(Fraction(c))] for k, c in sorted(el.items(), key=lambda kv: label_of(kv[0]))]

        return {
            "name": self.name,
            "g": {"series": self.g.series, "rank": self.g.rank},
            "h": {"series": self.h.series, "rank": self.h.rank},
            "regular": self.regular,
            "h_simple": [list(r) for r in self.h_simple],
            "generators": {"e": [enc(x) for x in self.e], "f": [enc(x) for x in self.f], "h": [enc(x) for x in self.hcart]},
        }


def label_of(key: Tuple) -> str:
    if key[0] == "h":
        return f"h:{key[1] + 1}"
    r = key[1]
    if any(x < 0 for x in r):
        return "f:" + ",".join(str(-x) for x in r)
    return "e:" + ",".join(str(x) for x in r)


def parse_label(label: str) -> Tuple:
    kind, _, rest = label.partition(":")
    kind = kind.strip()
    if kind == "h":
        return ("h", int(rest) - 1)
    r = tuple(int(x) for x in rest.split(","))
    if kind == "e":
        return ("e", r)
    if kind == "f":
        return ("e", tuple(-x for x in r))
    raise EmbeddingError(f"bad generator label {label!r}")


def _apply_elements(M: HWModule, els: Sequence[Element], vec: ModuleVector) -> Dict[Weight, SparseVec]:
    """Apply a product of Lie elements; the last one in the list acts first."""
    cur: Dict[Weight, SparseVec] = {vec.weight: vec.coords} if vec.coords else {}
    for el in reversed(els):
        nxt: Dict[Weight, SparseVec] = {}
        for w, coords in cur.items():
            for w2, c2 in M.apply_element(el, ModuleVector(w, coords)).items():
                axpy(nxt.setdefault(w2, {}), 1, c2)
        cur = {w: c for w, c in nxt.items() if c}
    return cur


def _combine(terms: Sequence[Tuple[int, Dict[Weight, SparseVec]]]) -> Dict[Weight, SparseVec]:
    out: Dict[Weight, SparseVec] = {}
    for c, d in terms:
        for w, v in d.items():
            axpy(out.setdefault(w, {}), c, v)
    return {w: v for w, v in out.items() if v}


def check_generator_relations(M: HWModule, emb: Embedding) -> List[str]:
    """[e'_i, f'_j] = delta_ij h'_i, [h'_i, e'_j] = a_ji e'_j, [h'_i, f'_j] = -a_ji f'_j
    and both Serre relations, as exact operator identities on M."""
    h = emb.h
    k = h.rank
    bad = []
    for mu, d in M.dims.items():
        for c in range(d):
            v = ModuleVector(mu, {c: Fraction(1)})
            for i in range(k):
                for j in range(k):
                    lhs = _combine([(1, _apply_elements(M, [emb.e[i], emb.f[j]], v)), (-1, _apply_elements(M, [emb.f[j], emb.e[i]], v))])
                    rhs = _apply_elements(M, [emb.hcart[i]], v) if i == j else {}
                    if _combine([(1, lhs), (-1, rhs)]):
                        bad.append(f"[e'{i+1},f'{j+1}] on {mu}")
                    a = h.cartan[j][i]
                    for gen, sgn in ((emb.e[j], 1), (emb.f[j], -1)):
                        t = _combine([
                            (1, _apply_elements(M, [emb.hcart[i], gen], v)),
                            (-1, _apply_elements(M, [gen, emb.hcart[i]], v)),
                            (-sgn * a, _apply_elements(M, [gen], v)),
                        ])
                        if t:
                            bad.append(f"[h'{i+1}, {'e' if sgn > 0 else 'f'}'{j+1}] on {mu}")
            for i in range(k):
                for j in range(k):
                    if i == j:
                        continue
                    m = 1 - h.cartan[j][i]
                    for gens in (emb.e, emb.f):
                        terms = []
                        for t in range(m + 1):
                            word = [gens[i]] * (m - t) + [gens[j]] + [gens[i]] * t
                            terms.append(((-1) ** t * _binom(m, t), _apply_elements(M, word, v)))
                        if _combine(terms):
                            bad.append(f"Serre ({i+1},{j+1}) on {mu}")
    return bad


def _binom(n, k):
    from math import comb

    return comb(n, k)


# -- constructing embeddings ---------------------------------------------------------


def _simple_subset(g: RootSystem, subset: Sequence[Root]) -> List[Root]:
    """Indecomposable elements of a set of positive roots."""
    s = set(tuple(r) for r in subset)
    out = []
    for r in s:
        if not any(tuple(a - b for a, b in zip(r, x)) in s for x in s if x != r):
            out.append(r)
    return sorted(out)


def make_regular_embedding(
    g: RootSystem,
    roots: Sequence[Root],
    h_series: str,
    h_rank: int,
    name: str = "",
    check: bool = True,
) -> Embedding:
    """Regular embedding from ``h``-simple roots (in order) or from a full set of
    positive roots, which is then reduced to its simple roots and matched to the
    standard numbering of the declared type."""
    h = build_root_system(h_series, h_rank)
    roots = [tuple(int(x) for x in r) for r in roots]
    for r in roots:
        if r not in g.index:
            raise EmbeddingError(f"{r} is not a positive root of {g.name()}")
    if len(roots) == h_rank:
        simple = roots
    else:
        cand = _simple_subset(g, roots)
        if len(cand) != h_rank:
            raise EmbeddingError(f"root subset has {len(cand)} simple roots, {h.name()} needs {h_rank}")
        simple = None
        for perm in itertools.permutations(cand):
            if _cartan_of(g, perm) == h.cartan:
                simple = list(perm)
                break
        if simple is None:
            raise EmbeddingError(f"root subset is not of type {h.name()}")
    if _cartan_of(g, simple) != h.cartan:
        raise EmbeddingError(f"roots {simple} do not have the Cartan matrix of {h.name()}")
    h_pos = []
    for hr in h.positive_roots:
        gr = tuple(sum(hr[k] * simple[k][i] for k in range(h_rank)) for i in range(g.rank))
        if gr not in g.index:
            raise EmbeddingError(f"{gr} is not a root of {g.name()}")
        h_pos.append(gr)
    if len(roots) != h_rank and set(h_pos) != set(roots):
        raise EmbeddingError(f"root subset is not closed, or not of type {h.name()}")
    e = [{("e", r): Fraction(1)} for r in simple]
    f = [{("e", tuple(-x for x in r)): Fraction(1)} for r in simple]
    hc = [{("h", i): c for i, c in enumerate(g.coroot(r)) if c} for r in simple]
    emb = Embedding(g, h, e, f, hc, regular=True, h_roots=tuple(h_pos), h_simple=tuple(simple), name=name)
    if check:
        bad = emb.check_serre()
        if bad:
            raise EmbeddingError(f"Serre check failed: {bad[:3]}")
    return emb


def _cartan_of(g: RootSystem, simple: Sequence[Root]) -> List[List[int]]:
    out = []
    for a in simple:
        row = []
        for b in simple:
            v = 2 * g.form(a, b) / g.form(b, b)
            row.append(int(v))
        out.append(row)
    return out


def identity_embedding(g: RootSystem) -> Embedding:
    return make_regular_embedding(g, g.simple_roots, g.series, g.rank, name=f"{g.name()}:{g.name()}")


def load_embedding(g: RootSystem, source, check: bool = True) -> Embedding:
    """Read an embedding from a JSON file path, JSON text, or an already parsed dict.

    Generator images are lists of ``[label, coefficient]`` with labels
    ``e:<root>``, ``f:<root>`` (root in simple-root coordinates of ``g``) or
    ``h:<i>`` (1-based), and coefficients as integers or fraction strings.
    """
    if isinstance(source, dict):
        data = source
    elif isinstance(source, str) and os.path.exists(source):
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = json.loads(source)
    if "g" in data:
        gs = data["g"]
        if gs["series"].upper() != g.series or int(gs["rank"]) != g.rank:
            raise EmbeddingError(f"data file is for {gs['series']}{gs['rank']}, not {g.name()}")
    h = build_root_system(data["h"]["series"], int(data["h"]["rank"]))
    gens = data["generators"]

    def dec(lst):
        el: Element = {}
        for label, c in lst:
            key = parse_label(label)
            if key[0] == "e" and tuple(abs(x) for x in key[1]) not in g.index:
                raise EmbeddingError(f"{label} is not a root vector of {g.name()}")
            if key[0] == "h" and not 0 <= key[1] < g.rank:
                raise EmbeddingError(f"{label} is out of range")
            el[key] = el.get(key, Fraction(0)) + Fraction(c)
        return el

    e = [dec(x) for x in gens["e"]]
    f = [dec(x) for x in gens["f"]]
    hc = [dec(x) for x in gens["h"]]
    if not (len(e) == len(f) == len(hc) == h.rank):
        raise EmbeddingError("wrong number of generator images")
    regular = bool(data.get("regular", False))
    simple = tuple(tuple(r) for r in data.get("h_simple", ()))
    h_pos: Tuple[Root, ...] = ()
    if regular:
        if not simple:
            raise EmbeddingError("regular embedding data must list h_simple")
        h_pos = tuple(
            tuple(sum(hr[k] * simple[k][i] for k in range(h.rank)) for i in range(g.rank)) for hr in h.positive_roots
        )
    emb = Embedding(g, h, e, f, hc, regular=regular, h_roots=h_pos, h_simple=simple, name=data.get("name", ""))
    if check:
        bad = emb.check_serre()
        if bad:
            raise EmbeddingError(f"Serre check failed: {bad[:3]}")
    return emb


# -- invariant functionals and slices --------------------------------------------


@dataclass
class FunctionalGroup:
    """h-lowest functionals of one restricted weight, as coordinates on the
    module's dual basis; ``index`` numbers the basis vectors of the group."""

    h_weight: Weight
    weights: List[Weight]
    index: Dict[Tuple[Weight, int], int]
    functionals: List[SparseVec]

    def pairing(self, vec: ModuleVector) -> List[Fraction]:
        out = []
        for om in self.functionals:
            s = Fraction(0)
            for k, c in vec.coords.items():
                g = self.index.get((vec.weight, k))
                if g is not None:
                    x = om.get(g)
                    if x:
                        s += x * c
            out.append(s)
        return out

    def as_dual(self, om: SparseVec) -> Dict[Tuple[Weight, int], Fraction]:
        inv = {g: wk for wk, g in self.index.items()}
        return {inv[g]: c for g, c in om.items()}


def lowest_invariant_functionals(M: HWModule, emb: Embedding, dominant_only: bool = True) -> List[FunctionalGroup]:
    """Basis of the annihilator of ``sum_k f'_k V`` grouped by restricted weight.

    Functionals with a non-dominant restricted weight cannot occur, so those
    groups are skipped unless ``dominant_only`` is false.
    """
    groups: Dict[Weight, List[Weight]] = {}
    for mu in M.weights:
        groups.setdefault(emb.restrict(mu), []).append(mu)
    hsimple_w = [emb.h.root_to_weight(b) for b in emb.h.simple_roots]
    out = []
    for nu in sorted(groups, key=lambda w: (-sum(w), w)):
        if dominant_only and any(x < 0 for x in nu):
            continue
        wts = groups[nu]
        index: Dict[Tuple[Weight, int], int] = {}
        for mu in wts:
            for k in range(M.dims[mu]):
                index[(mu, k)] = len(index)
        rows: List[SparseVec] = []
        for kk in range(emb.h.rank):
            src = tuple(a + b for a, b in zip(nu, hsimple_w[kk]))
            for mu2 in groups.get(src, ()):
                for c in range(M.dims[mu2]):
                    img = M.apply_element(emb.f[kk], ModuleVector(mu2, {c: Fraction(1)}))
                    row: SparseVec = {}
                    for w, coords in img.items():
                        for j, x in coords.items():
                            row[index[(w, j)]] = x
                    if row:
                        rows.append(row)
        ann = nullspace(rows, len(index))
        if ann:
            out.append(FunctionalGroup(nu, wts, index, ann))
    return out


@dataclass
class SliceEntry:
    signature: Signature
    h_weight: Weight
    functional: Dict[Tuple[Weight, int], Fraction]


@dataclass
class BranchingSlice:
    hw: Weight
    entries: List[SliceEntry]
    candidates_tested: int = 0

    @property
    def signatures(self) -> List[Signature]:
        return [e.signature for e in self.entries]

    def multiplicities(self) -> Dict[Weight, int]:
        out: Dict[Weight, int] = {}
        for e in self.entries:
            out[e.h_weight] = out.get(e.h_weight, 0) + 1
        return out

    def rows(self) -> List[str]:
        return [f"{','.join(map(str, self.hw))} | {e.signature} | {','.join(map(str, e.h_weight))}" for e in self.entries]


def staircase(
    M: HWModule,
    group: FunctionalGroup,
    order: MonomialOrderSpec,
    budget: Optional[int] = DEFAULT_BUDGET,
    support: Optional[Sequence[int]] = None,
) -> Tuple[List[Signature], List[SparseVec], int]:
    """Least signatures of a triangular basis of the group's functionals.

    Candidates of all weights in the group are visited in increasing order;
    a signature is a leader when its pairing column is independent of the
    columns of all smaller candidates.  Returns leaders, the matching
    functionals (dual to the leaders) and the number of candidates visited.
    ``support`` restricts candidates to exponent vectors on those roots.
    """
    a = len(group.functionals)
    cands: List[Signature] = []
    for mu in group.weights:
        supported = any(group.index[(mu, k)] in om for om in group.functionals for k in range(M.dims[mu]))
        if supported:
            cands.extend(sorted_candidates(M, order, mu, budget, support))
    cands.sort(key=lambda s: order.key(s.exps))
    basis = IncrementalBasis()
    leaders: List[Signature] = []
    cols: List[List[Fraction]] = []
    memo: dict = {}
    visited = 0
    for sig in cands:
        visited += 1
        v = M.apply_exponents(sig.exps, memo)
        if not v.coords:
            continue
        col = group.pairing(v)
        sv = {i: x for i, x in enumerate(col) if x}
        if not sv:
            continue
        idx, _ = basis.add(sv)
        if idx is not None:
            leaders.append(sig)
            cols.append(col)
            if len(leaders) == a:
                break
    if len(leaders) != a:
        raise RuntimeError(f"only {len(leaders)} of {a} functionals received a signature")
    # X C = I with C[l][j] = omega_l(v(leader_j))
    C = [[cols[j][l] for j in range(a)] for l in range(a)]
    X = inverse(C)
    funcs = []
    for k in range(a):
        om: SparseVec = {}
        for l in range(a):
            axpy(om, X[k][l], group.functionals[l])
        funcs.append(om)
    return leaders, funcs, visited


def branching_slice(
    M: HWModule,
    emb: Embedding,
    order: MonomialOrderSpec,
    budget: Optional[int] = DEFAULT_BUDGET,
    check_dimension: bool = True,
    route: str = "direct",
) -> BranchingSlice:
    """Signatures of the branching semigroup with highest weight ``M.highest_weight``.

    ``route="direct"`` visits every candidate signature.  ``route="tilde"``
    (regular embeddings with a compatible order) only visits signatures with
    zero exponents on the roots of h; it yields the same leaders whenever
    every leader is tilde-fixed, which compatibility guarantees, and it fails
    loudly when too few leaders are found.
    """
    support = None
    if route == "tilde":
        if not emb.regular:
            raise EmbeddingError("the tilde route needs a regular embedding")
        hset = set(emb.h_root_indices)
        support = [i for i in range(emb.g.n_positive) if i not in hset]
    elif route != "direct":
        raise ValueError(f"unknown route {route!r}")
    entries: List[SliceEntry] = []
    visited = 0
    for grp in lowest_invariant_functionals(M, emb):
        leaders, funcs, n = staircase(M, grp, order, budget, support)
        visited += n
        for sig, om in zip(leaders, funcs):
            entries.append(SliceEntry(sig, grp.h_weight, grp.as_dual(om)))
    sigs = [e.signature for e in entries]
    if len(set(sigs)) != len(sigs):
        raise RuntimeError("duplicate signatures in a branching slice")
    if check_dimension:
        total = sum(emb.h.weyl_dim(e.h_weight) for e in entries)
        if total != M.dim:
            raise RuntimeError(f"restricted dimensions sum to {total}, module has dimension {M.dim}")
    entries.sort(key=lambda e: order.key(e.signature.exps))
    return BranchingSlice(M.highest_weight, entries, visited)


def functional_residual(M: HWModule, emb: Embedding, functional: Dict[Tuple[Weight, int], Fraction]) -> int:
    """Number of basis vectors b with <omega, f'_k b> != 0 for some k (0 for a valid functional)."""
    bad = 0
    for mu, d in M.dims.items():
        for c in range(d):
            for kk in range(emb.h.rank):
                img = M.apply_element(emb.f[kk], ModuleVector(mu, {c: Fraction(1)}))
                s = sum(functional.get((w, j), 0) * x for w, coords in img.items() for j, x in coords.items())
                if s:
                    bad += 1
    return bad


# -- the tilde map and its compatibility conditions --------------------------------


def tilde(sig: Signature, emb: Embedding) -> Signature:
    """Zero the exponents on the roots of h."""
    if not emb.regular:
        raise EmbeddingError("the tilde map needs a regular embedding")
    ex = list(sig.exps)
    for i in emb.h_root_indices:
        ex[i] = 0
    return Signature(sig.hw, ex)


@dataclass
class CompatibilityReport:
    roots_first: bool
    order_compatible: bool
    pairs_checked: int
    max_degree: int
    random_pairs: int
    counterexample: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None
    verdict_kind: str = "exact (i), sampled (ii)"

    @property
    def ok(self) -> bool:
        return self.roots_first and self.order_compatible


def _vectors_up_to_degree(n: int, d: int, support: Sequence[int]):
    yield (0,) * n
    for deg in range(1, d + 1):
        for combo in itertools.combinations_with_replacement(support, deg):
            v = [0] * n
            for i in combo:
                v[i] += 1
            yield tuple(v)


def check_compatibility(
    emb: Embedding,
    order: MonomialOrderSpec,
    max_degree: int = 3,
    random_pairs: int = 2000,
    seed: int = 0,
    max_pairs: int = 2_000_000,
) -> CompatibilityReport:
    """(i) every root of h precedes every other positive root (exact);
    (ii) tilde(s) < tilde(t) implies s < t, on all pairs of exponent vectors of
    degree <= max_degree (lowered automatically if that exceeds ``max_pairs``)
    plus ``random_pairs`` random pairs."""
    if not emb.regular:
        raise EmbeddingError("compatibility is defined for regular embeddings")
    N = emb.g.n_positive
    hidx = emb.h_root_indices
    others = [i for i in range(N) if i not in set(hidx)]
    roots_first = not hidx or not others or max(hidx) < min(others)
    hset = set(hidx)

    def tl(v):
        return tuple(0 if i in hset else x for i, x in enumerate(v))

    d = max_degree
    while d > 0:
        from math import comb

        cnt = comb(N + d, d)
        if cnt * cnt <= max_pairs:
            break
        d -= 1
    vecs = list(_vectors_up_to_degree(N, d, range(N)))
    keys = [order.key(v) for v in vecs]
    tkeys = [order.key(tl(v)) for v in vecs]
    checked = 0
    counter = None
    for i in range(len(vecs)):
        for j in range(len(vecs)):
            checked += 1
            if tkeys[i] < tkeys[j] and not keys[i] < keys[j]:
                counter = (vecs[i], vecs[j])
                break
        if counter:
            break
    rng = random.Random(seed)
    if counter is None:
        for _ in range(random_pairs):
            a = tuple(rng.randint(0, 3) for _ in range(N))
            b = tuple(rng.randint(0, 3) for _ in range(N))
            checked += 1
            if order.key(tl(a)) < order.key(tl(b)) and not order.key(a) < order.key(b):
                counter = (a, b)
                break
    return CompatibilityReport(roots_first, counter is None, checked, d, random_pairs, counter)


def tilde_fixed_signatures(
    basis: EssentialBasis, emb: Embedding, report: Optional[CompatibilityReport] = None
) -> Set[Signature]:
    """Essential signatures fixed by the tilde map (valid for compatible orders only)."""
    if report is None:
        report = check_compatibility(emb, basis.order)
    if not report.ok:
        raise EmbeddingError("order and root numbering are not compatible with the embedding")
    return {s for s in basis.signatures if tilde(s, emb) == s}
