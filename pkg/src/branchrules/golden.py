"""Reference tables of worked branching rules and checks against them.

``data/golden.json`` holds the G2 > A2, B3 > G2 and F4 > B4 tables (generator
signatures, restricted weights, relations with 1-based generator numbers).
The B_n > D_n and A_n > A_{n-1} tables are parametric in ``n`` and are
built here.

For F4 the tables list only the exponents on the eight roots
``(eps_1 +- eps_2 +- eps_3 +- eps_4)/2``; ``column_roots`` gives the
1-based index of the root behind each column.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .branching import branching_slice, check_compatibility, tilde_fixed_signatures
from .essential import Signature, essential_signatures
from .hwmodule import DEFAULT_DIM_CAP, build_module
from .pairs import DATA_DIR, PairSpec, an_an1, bn_dn, get_pair
from .semigroup import (
    CERTIFIED,
    GeneratorSet,
    certify,
    compute_relations,
    discover_generators,
)
from .toric import Binomial

HALF = Fraction(1, 2)


def load_golden() -> dict:
    with open(os.path.join(DATA_DIR, "golden.json")) as fh:
        return json.load(fh)


@dataclass
class GoldenTable:
    pair: PairSpec
    signatures: List[Signature]
    h_weights: List[Tuple[int, ...]]
    relations: List[Tuple[Tuple[int, ...], Tuple[int, ...]]] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def generator_set(self) -> GeneratorSet:
        return GeneratorSet(self.pair.g, self.pair.emb.h, list(self.signatures), list(self.h_weights), self.pair.emb)


def _relations_from_indices(rels, n) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    out = []
    for lhs, rhs in rels:
        u = [0] * n
        w = [0] * n
        for i in lhs:
            u[i - 1] += 1
        for i in rhs:
            w[i - 1] += 1
        out.append((tuple(u), tuple(w)))
    return out


def golden_table(example: str) -> GoldenTable:
    """Tables for ``g2-a2``, ``b3-g2``, ``f4-b4``, ``bn-dn-<n>`` and ``an-an1-<n>``."""
    if example.startswith("bn-dn-"):
        return bn_dn_table(int(example.rsplit("-", 1)[1]))
    if example.startswith("an-an1-"):
        return an_an1_table(int(example.rsplit("-", 1)[1]))
    data = load_golden()[example]
    P = get_pair(data["pair"])
    N = P.g.n_positive
    sigs = []
    for d in data["generators"]:
        if "exps" in d:
            ex = d["exps"]
        else:
            ex = [0] * N
            for pos, v in zip(data["column_roots"], d["columns"]):
                ex[pos - 1] = v
        sigs.append(Signature(d["hw"], ex))
    hws = [tuple(d["h_weight"]) for d in data["generators"]]
    rels = _relations_from_indices(data["relations"], len(sigs))
    return GoldenTable(P, sigs, hws, rels, data)


def _eps(n, idx):
    return tuple(Fraction(1) if i < idx else Fraction(0) for i in range(n))


def bn_dn_table(n: int) -> GoldenTable:
    """sigma_{2k-1} = (w_k; 0), sigma_{2k} = (w_k; eps_k), then (2w_n; eps_n),
    (2w_n; 2 eps_n), (2w_n; 0) with their D_n highest weights."""
    P = bn_dn(n)
    g, h = P.g, P.emb.h
    N = g.n_positive

    def eps_root(k):
        return g.index[g.ambient_to_root(tuple(Fraction(int(i == k - 1)) for i in range(n)))]

    def hw(k, mult=1):
        return tuple(mult * int(i == k - 1) for i in range(n))

    def sig(lam, root_idx=None, p=1):
        ex = [0] * N
        if root_idx is not None:
            ex[root_idx] = p
        return Signature(lam, ex)

    half_all = tuple(HALF for _ in range(n))
    half_last = tuple(HALF if i < n - 1 else -HALF for i in range(n))
    sigs, amb = [], []
    for k in range(1, n + 1):
        sigs.append(sig(hw(k)))
        amb.append(_eps(n, k) if k < n else half_all)
        sigs.append(sig(hw(k), eps_root(k)))
        amb.append(_eps(n, k - 1) if k < n else half_last)
    ones = tuple(Fraction(1) for _ in range(n))
    sigs.append(sig(hw(n, 2), eps_root(n)))
    amb.append(_eps(n, n - 1))
    sigs.append(sig(hw(n, 2), eps_root(n), 2))
    amb.append(tuple(ones[:-1]) + (Fraction(-1),))
    sigs.append(sig(hw(n, 2)))
    amb.append(ones)
    hws = [h.ambient_to_weight(a) for a in amb]
    return GoldenTable(P, sigs, hws, [], {"free_count": 2 * n})


def an_an1_table(n: int) -> GoldenTable:
    """sigma_{2k-1} = (pi_k; 0) -> w_k, sigma_{2k} = (pi_k; eps_k - eps_{n+1}) -> w_{k-1}."""
    P = an_an1(n)
    g = P.g
    N = g.n_positive
    sigs, hws = [], []

    def fw(k):
        return tuple(int(i == k - 1) for i in range(n - 1))

    for k in range(1, n + 1):
        lam = tuple(int(i == k - 1) for i in range(n))
        sigs.append(Signature(lam, [0] * N))
        hws.append(fw(k) if k < n else (0,) * (n - 1))
        root = tuple(int(i >= k - 1) for i in range(n))
        ex = [0] * N
        ex[g.index[root]] = 1
        sigs.append(Signature(lam, ex))
        hws.append(fw(k - 1) if k > 1 else (0,) * (n - 1))
    return GoldenTable(P, sigs, hws, [], {"free_count": 2 * n})


def table_for_pair(name: str) -> Optional[str]:
    """Reference table id for a builtin pair name, if there is one."""
    key = name.replace(" ", "").upper()
    fixed = {"G2:A2": "g2-a2", "B3:G2": "b3-g2", "F4:B4": "f4-b4"}
    if key in fixed:
        return fixed[key]
    m = re.fullmatch(r"B(\d+):D\1", key)
    if m:
        return f"bn-dn-{m.group(1)}"
    m = re.fullmatch(r"A(\d+):A(\d+)", key)
    if m and int(m.group(2)) == int(m.group(1)) - 1:
        return f"an-an1-{m.group(1)}"
    return None


def reference_numbering(name: str, signatures: Sequence[Signature]) -> Optional[List[int]]:
    """Positions sorting ``signatures`` into the reference table's numbering,
    or None when the pair has no table or a signature is missing from it."""
    ex = table_for_pair(name)
    if ex is None:
        return None
    ref = golden_table(ex).signatures
    if any(s not in ref for s in signatures):
        return None
    return sorted(range(len(signatures)), key=lambda i: ref.index(signatures[i]))


# -- verification ----------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    example: str
    checks: List[CheckResult]
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> List[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'} {self.example} {c.name}" + (f": {c.detail}" if c.detail else "") for c in self.checks]
        out.append(f"{'PASS' if self.passed else 'FAIL'} {self.example} ({self.seconds:.1f}s)")
        return out


def _unordered(rels) -> set:
    return {frozenset([tuple(u), tuple(w)]) for u, w in rels}


def _slice_check(T: GoldenTable, weights, dim_cap=DEFAULT_DIM_CAP, route="direct") -> CheckResult:
    P = T.pair
    expected = {}
    for s, w in zip(T.signatures, T.h_weights):
        if s.hw in weights:
            expected.setdefault(s.hw, set()).add((s, w))
    bad = []
    for lam in weights:
        M = build_module(P.g, lam, dim_cap=dim_cap)
        sl = branching_slice(M, P.emb, P.order, route=route)
        got = {(e.signature, e.h_weight) for e in sl.entries}
        if not expected.get(lam, set()) <= got:
            bad.append(str(lam))
    return CheckResult("slices contain the tabulated generators", not bad, ", ".join(bad))


def verify_g2_a2() -> List[CheckResult]:
    T = golden_table("g2-a2")
    P = T.pair
    res = discover_generators(P.emb, P.order)
    checks = [
        CheckResult("discovery certified", res.status == CERTIFIED, res.status),
        CheckResult("generators match", set(res.generators.signatures) == set(T.signatures), f"{len(res.generators)} found"),
        CheckResult(
            "restricted weights match",
            dict(zip(res.generators.signatures, res.generators.h_weights)) == dict(zip(T.signatures, T.h_weights)),
        ),
    ]
    pres = compute_relations(T.generator_set())
    checks.append(CheckResult("relations match", _unordered(pres.relations) == _unordered(T.relations), "; ".join(pres.relation_strings())))
    return checks


def verify_b3_g2() -> List[CheckResult]:
    T = golden_table("b3-g2")
    P = T.pair
    fund = GeneratorSet(P.g, P.emb.h, T.signatures[:5], T.h_weights[:5], P.emb)
    rep = certify(fund, 2)
    checks = [
        CheckResult(
            "fundamental generators fail exactly at the tabulated weights",
            sorted(rep.failing) == sorted(tuple(w) for w in T.extra["fundamental_failures"]),
            str(rep.failing),
        )
    ]
    res = discover_generators(P.emb, P.order)
    added = [w for w in res.processed if sum(w) > 1]
    checks += [
        CheckResult("discovery certified", res.status == CERTIFIED, res.status),
        CheckResult("added weights", sorted(added) == sorted(tuple(w) for w in T.extra["added_weights"]), str(added)),
        CheckResult("generators match", set(res.generators.signatures) == set(T.signatures), f"{len(res.generators)} found"),
        CheckResult(
            "restricted weights match",
            dict(zip(res.generators.signatures, res.generators.h_weights)) == dict(zip(T.signatures, T.h_weights)),
        ),
    ]
    pres = compute_relations(T.generator_set())
    checks.append(CheckResult("relations match", _unordered(pres.relations) == _unordered(T.relations), "; ".join(pres.relation_strings())))
    return checks


def verify_f4_b4(
    extended: bool = False, dim_cap: Optional[int] = None, degree_bound: int = 6, progress=None, threads: int = 1, cache_dir=None
) -> List[CheckResult]:
    T = golden_table("f4-b4")
    P = T.pair
    checks = []
    restr = T.extra["fundamental_restrictions"]
    for key in ("1,0,0,0", "0,0,0,1"):
        lam = tuple(int(x) for x in key.split(","))
        M = build_module(P.g, lam)
        sl = branching_slice(M, P.emb, P.order)
        got = sorted(e.h_weight for e in sl.entries)
        checks.append(CheckResult(f"restriction of {key}", got == sorted(tuple(w) for w in restr[key]), str(got)))
        dims = [P.emb.h.weyl_dim(w) for w in got]
        checks.append(CheckResult(f"dimensions of {key}", sum(dims) == M.dim, f"{M.dim} = {' + '.join(map(str, dims))}"))
    checks.append(_slice_check(T, [(1, 0, 0, 0), (0, 0, 0, 1)]))
    gs = T.generator_set()
    wt_ok = all(P.emb.restrict(s.weight(P.g)) == w for s, w in zip(T.signatures, T.h_weights))
    checks.append(CheckResult("restricted weights of all generators", wt_ok))
    pts = gs.matrix_points()
    ident = all(
        [sum(u[j] * pts[j][r] for j in range(len(pts))) for r in range(len(pts[0]))]
        == [sum(w[j] * pts[j][r] for j in range(len(pts))) for r in range(len(pts[0]))]
        for u, w in T.relations
    )
    checks.append(CheckResult(f"all {len(T.relations)} relations are identities", ident))
    pres = compute_relations(gs)
    checks.append(CheckResult("reduced Groebner basis matches", pres.relations == T.relations, f"{len(pres.relations)} relations"))
    if extended:
        cap = dim_cap if dim_cap is not None else 40000
        res = discover_generators(
            P.emb, P.order, dim_cap=cap, k=degree_bound, progress=progress, route="tilde", threads=threads, cache_dir=cache_dir
        )
        added = [w for w in res.processed if sum(w) > 1]
        checks.append(CheckResult("extended discovery certified", res.status == CERTIFIED, f"{res.status}, k={degree_bound}"))
        checks.append(CheckResult("extended added weights", sorted(added) == sorted(tuple(w) for w in T.extra["added_weights"]), str(added)))
        checks.append(
            CheckResult("extended generators match", set(res.generators.signatures) == set(T.signatures), f"{len(res.generators)} found")
        )
    return checks


def verify_bn_dn(n: int) -> List[CheckResult]:
    T = bn_dn_table(n)
    P = T.pair
    checks = []
    weights = sorted({s.hw for s in T.signatures})
    checks.append(_slice_check(T, weights))
    # slice of each weight equals the tabulated rows exactly
    exact = True
    for lam in weights:
        M = build_module(P.g, lam)
        sl = branching_slice(M, P.emb, P.order)
        exp = {(s, w) for s, w in zip(T.signatures, T.h_weights) if s.hw == lam}
        if {(e.signature, e.h_weight) for e in sl.entries} != exp:
            exact = False
    checks.append(CheckResult("slices equal the table", exact))
    rep = check_compatibility(P.emb, P.order)
    checks.append(CheckResult("compatibility", rep.ok, f"(i) {rep.roots_first}, (ii) sampled {rep.pairs_checked} pairs"))
    agree = True
    for k in range(1, n + 1):
        lam = tuple(int(i == k - 1) for i in range(n))
        M = build_module(P.g, lam)
        B = essential_signatures(M, P.order)
        direct = set(branching_slice(M, P.emb, P.order).signatures)
        if tilde_fixed_signatures(B, P.emb, rep) != direct:
            agree = False
    checks.append(CheckResult("tilde-fixed essential signatures equal the slices", agree))
    free = GeneratorSet(P.g, P.emb.h, T.signatures[: 2 * n], T.h_weights[: 2 * n], P.emb)
    pres = compute_relations(free)
    checks.append(CheckResult("first 2n generators are free", not pres.relations))
    res = discover_generators(P.emb, P.order)
    checks.append(CheckResult("discovery gives the first 2n generators", set(res.generators.signatures) == set(T.signatures[: 2 * n]), res.status))
    return checks


def verify_an_an1(n: int) -> List[CheckResult]:
    T = an_an1_table(n)
    P = T.pair
    res = discover_generators(P.emb, P.order)
    checks = [
        CheckResult("discovery certified", res.status == CERTIFIED, res.status),
        CheckResult("generators match", set(res.generators.signatures) == set(T.signatures), f"{len(res.generators)} found"),
        CheckResult(
            "restricted weights match",
            dict(zip(res.generators.signatures, res.generators.h_weights)) == dict(zip(T.signatures, T.h_weights)),
        ),
    ]
    pres = compute_relations(T.generator_set())
    checks.append(CheckResult("free", not pres.relations))
    return checks


EXAMPLES = ["g2-a2", "b3-g2", "f4-b4", "bn-dn-2", "bn-dn-3", "an-an1-2", "an-an1-3"]


def verify(
    example: str,
    extended: bool = False,
    dim_cap: Optional[int] = None,
    degree_bound: int = 6,
    progress=None,
    threads: int = 1,
    cache_dir=None,
) -> VerifyReport:
    t = time.time()
    if example == "g2-a2":
        checks = verify_g2_a2()
    elif example == "b3-g2":
        checks = verify_b3_g2()
    elif example == "f4-b4":
        checks = verify_f4_b4(extended, dim_cap, degree_bound, progress, threads, cache_dir)
    elif example.startswith("bn-dn-"):
        checks = verify_bn_dn(int(example.rsplit("-", 1)[1]))
    elif example.startswith("an-an1-"):
        checks = verify_an_an1(int(example.rsplit("-", 1)[1]))
    else:
        raise KeyError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")
    return VerifyReport(example, checks, time.time() - t)
