"""Signatures, monomial orders on exponent vectors, and essential signatures.

A signature ``(lam; p_1, ..., p_N)`` names the vector
``e_{-alpha_1}^{p_1} ... e_{-alpha_N}^{p_N} v_lam``.  It is essential when
that vector is not a combination of vectors of strictly smaller signatures
of the same highest weight.

Orders are described declaratively (:class:`MonomialOrderSpec`) and compiled
to an integer matrix ``R``: ``p < q`` iff ``R p < R q`` lexicographically.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .hwmodule import HWModule, ModuleVector
from .linalg import IncrementalBasis, SparseVec, rref
from .rootsys import RootSystem, Weight

DEFAULT_BUDGET = 2_000_000


class EnumerationBudgetExceeded(RuntimeError):
    """Too many candidate exponent vectors for one weight space."""


class OrderError(ValueError):
    pass


# -- signatures ----------------------------------------------------------------


@dataclass(frozen=True, order=False)
class Signature:
    hw: Tuple[int, ...]
    exps: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "hw", tuple(int(x) for x in self.hw))
        object.__setattr__(self, "exps", tuple(int(x) for x in self.exps))
        if any(x < 0 for x in self.exps):
            raise ValueError("exponents must be nonnegative")

    def __add__(self, other: "Signature") -> "Signature":
        if len(self.hw) != len(other.hw) or len(self.exps) != len(other.exps):
            raise ValueError("signatures of different shapes")
        return Signature(
            tuple(a + b for a, b in zip(self.hw, other.hw)),
            tuple(a + b for a, b in zip(self.exps, other.exps)),
        )

    def scale(self, k: int) -> "Signature":
        return Signature(tuple(k * a for a in self.hw), tuple(k * a for a in self.exps))

    def is_zero(self) -> bool:
        return not any(self.hw) and not any(self.exps)

    def weight(self, rs: RootSystem) -> Weight:
        """The weight of v(sigma): lam - sum p_i alpha_i."""
        w = list(self.hw)
        for p, r in zip(self.exps, rs.positive_roots):
            if p:
                rw = rs.root_to_weight(r)
                for i in range(len(w)):
                    w[i] -= p * rw[i]
        return tuple(w)

    def vector(self) -> Tuple[int, ...]:
        return self.hw + self.exps

    def __str__(self) -> str:
        return f"({','.join(map(str, self.hw))}; {','.join(map(str, self.exps))})"

    @classmethod
    def parse(cls, text: str) -> "Signature":
        m = re.fullmatch(r"\s*\(?\s*([-\d,\s]*);([\d,\s]*)\)?\s*", text)
        if not m:
            raise ValueError(f"cannot parse signature {text!r}")

        def ints(s):
            s = s.strip()
            return tuple(int(x) for x in s.split(",")) if s else ()

        return cls(ints(m.group(1)), ints(m.group(2)))

    @classmethod
    def zero(cls, rank: int, n_roots: int) -> "Signature":
        return cls((0,) * rank, (0,) * n_roots)


# -- monomial orders --------------------------------------------------------------

STAGE_KINDS = ("degree", "deglex", "lex", "prefix_sums")


@dataclass(frozen=True)
class OrderStage:
    """One comparison step restricted to a block of exponent indices (0-based).

    ``degree``       total degree of the block
    ``deglex``       degree, then lexicographic on the block
    ``lex``          lexicographic on the block
    ``prefix_sums``  lexicographic on (sum of block[:m]) for m = len..1
    ``reverse`` flips the outcome of the step.
    """

    kind: str
    block: Tuple[int, ...]
    reverse: bool = False

    def rows(self, n: int) -> List[Tuple[int, ...]]:
        if self.kind not in STAGE_KINDS:
            raise OrderError(f"unknown stage kind {self.kind!r}")
        for i in self.block:
            if not 0 <= i < n:
                raise OrderError(f"index {i} out of range for {n} roots")

        def unit(i):
            return tuple(int(j == i) for j in range(n))

        def ind(idx):
            s = set(idx)
            return tuple(int(j in s) for j in range(n))

        if self.kind == "degree":
            out = [ind(self.block)]
        elif self.kind == "deglex":
            out = [ind(self.block)] + [unit(i) for i in self.block]
        elif self.kind == "lex":
            out = [unit(i) for i in self.block]
        else:
            out = [ind(self.block[:m]) for m in range(len(self.block), 0, -1)]
        if self.reverse:
            out = [tuple(-x for x in r) for r in out]
        return out

    def to_dict(self) -> dict:
        return {"kind": self.kind, "block": list(self.block), "reverse": self.reverse}


@dataclass(frozen=True)
class MonomialOrderSpec:
    """A cascade of stages followed by a fixed tie-break (deglex on all indices)."""

    name: str
    n: int
    stages: Tuple[OrderStage, ...] = ()
    matrix: Tuple[Tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows: List[Tuple[int, ...]] = []
        for st in self.stages:
            rows.extend(st.rows(self.n))
        rows.extend(OrderStage("deglex", tuple(range(self.n))).rows(self.n))
        object.__setattr__(self, "matrix", tuple(rows))
        self._validate()

    def _validate(self) -> None:
        from .linalg import integer_rank

        if integer_rank(self.matrix) != self.n:
            raise OrderError(f"order {self.name!r} is not total")
        for j in range(self.n):
            for r in self.matrix:
                if r[j]:
                    if r[j] < 0:
                        raise OrderError(f"order {self.name!r}: exponent {j + 1} can decrease a signature")
                    break

    def key(self, exps: Sequence[int]) -> Tuple[int, ...]:
        return tuple(sum(r[j] * exps[j] for j in range(self.n) if r[j]) for r in self.matrix)

    def to_dict(self) -> dict:
        return {"name": self.name, "n": self.n, "stages": [s.to_dict() for s in self.stages]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "MonomialOrderSpec":
        stages = tuple(OrderStage(s["kind"], tuple(s["block"]), bool(s.get("reverse", False))) for s in d.get("stages", []))
        return cls(d.get("name", "custom"), int(d["n"]), stages)

    @classmethod
    def from_json(cls, text: str) -> "MonomialOrderSpec":
        return cls.from_dict(json.loads(text))


def compare(order: MonomialOrderSpec, a: Signature, b: Signature) -> int:
    """-1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if a.hw != b.hw:
        raise OrderError(f"signatures with different highest weights {a.hw} and {b.hw} are not comparable")
    ka, kb = order.key(a.exps), order.key(b.exps)
    return (ka > kb) - (ka < kb)


def deglex_order(n: int, name: str = "deglex") -> MonomialOrderSpec:
    return MonomialOrderSpec(name, n, ())


def degree_revlex_order(n: int, name: str = "deg-revlex") -> MonomialOrderSpec:
    """Total degree first; on ties the lexicographically larger vector is smaller."""
    return MonomialOrderSpec(
        name, n, (OrderStage("degree", tuple(range(n))), OrderStage("lex", tuple(range(n)), reverse=True))
    )


def block_cascade_order(n: int, blocks: Sequence[Sequence[int]], name: str = "cascade") -> MonomialOrderSpec:
    """deglex on each block in turn, then the global tie-break."""
    return MonomialOrderSpec(name, n, tuple(OrderStage("deglex", tuple(b)) for b in blocks))


def prefix_sum_order(n: int, block: Sequence[int], name: str = "prefix-sums") -> MonomialOrderSpec:
    return MonomialOrderSpec(name, n, (OrderStage("prefix_sums", tuple(block)),))


# -- Kostant enumeration --------------------------------------------------------


def exponent_vectors(
    rs: RootSystem,
    target: Sequence[int],
    budget: Optional[int] = DEFAULT_BUDGET,
    support: Optional[Sequence[int]] = None,
) -> List[Tuple[int, ...]]:
    """All ``p >= 0`` with ``sum p_k alpha_k == target`` (simple-root coordinates).

    ``support`` restricts the nonzero exponents to the given root indices.
    Roots are tried in decreasing height; when every simple root is allowed
    they come last and are forced by the remainder.
    """
    roots = rs.positive_roots
    N = len(roots)
    n = rs.rank
    target = tuple(int(x) for x in target)
    if any(x < 0 for x in target):
        return []
    allowed = list(range(N)) if support is None else sorted(set(support))
    simple_idx = [rs.index[b] for b in rs.simple_roots]
    forced = all(i in allowed for i in simple_idx)
    free = [k for k in allowed if not (forced and sum(roots[k]) == 1)]
    free.sort(key=lambda k: (-sum(roots[k]), k))
    out: List[Tuple[int, ...]] = []
    p = [0] * N

    def emit():
        out.append(tuple(p))
        if budget is not None and len(out) > budget:
            raise EnumerationBudgetExceeded(f"more than {budget} candidate signatures for target {target}")

    def rec(pos: int, rem: List[int]) -> None:
        if pos == len(free):
            if forced:
                for i in range(n):
                    p[simple_idx[i]] = rem[i]
                emit()
                for i in range(n):
                    p[simple_idx[i]] = 0
            elif not any(rem):
                emit()
            return
        k = free[pos]
        r = roots[k]
        cmax = min(rem[i] // r[i] for i in range(n) if r[i])
        for c in range(cmax + 1):
            p[k] = c
            rec(pos + 1, [rem[i] - c * r[i] for i in range(n)])
        p[k] = 0

    rec(0, list(target))
    return out


def weight_depth(rs: RootSystem, hw: Sequence[int], mu: Sequence[int]) -> Tuple[int, ...]:
    """``hw - mu`` in simple-root coordinates."""
    inv = rs._cartan_inverse
    n = rs.rank
    diff = [hw[i] - mu[i] for i in range(n)]
    out = []
    for j in range(n):
        c = sum(diff[i] * inv[i][j] for i in range(n))
        if c.denominator != 1:
            raise ValueError(f"{mu} is not in the root lattice coset of {hw}")
        out.append(int(c))
    return tuple(out)


def sorted_candidates(
    M: HWModule,
    order: MonomialOrderSpec,
    mu: Weight,
    budget: Optional[int] = DEFAULT_BUDGET,
    support: Optional[Sequence[int]] = None,
) -> List[Signature]:
    target = weight_depth(M.rs, M.highest_weight, mu)
    vecs = exponent_vectors(M.rs, target, budget, support)
    vecs.sort(key=order.key)
    return [Signature(M.highest_weight, p) for p in vecs]


# -- essential bases -------------------------------------------------------------


@dataclass
class EssentialBasis:
    hw: Weight
    order: MonomialOrderSpec
    signatures: List[Signature]
    vectors: Dict[Signature, ModuleVector]
    by_weight: Dict[Weight, List[Signature]]
    candidates_tested: int = 0

    def __len__(self) -> int:
        return len(self.signatures)

    def __iter__(self) -> Iterator[Signature]:
        return iter(self.signatures)

    def __contains__(self, sig) -> bool:
        return sig in self.vectors

    def position(self, sig: Signature) -> int:
        return self.signatures.index(sig)


def essential_in_weight(
    M: HWModule, order: MonomialOrderSpec, mu: Weight, budget: Optional[int] = DEFAULT_BUDGET, memo: Optional[dict] = None
) -> List[Tuple[Signature, ModuleVector]]:
    """Essential signatures of weight ``mu`` in increasing order, with their vectors."""
    dim = M.dims.get(mu, 0)
    if not dim:
        return []
    basis = IncrementalBasis()
    kept = []
    memo = {} if memo is None else memo
    for sig in sorted_candidates(M, order, mu, budget):
        v = M.apply_exponents(sig.exps, memo)
        if not v.coords:
            continue
        idx, _ = basis.add(v.coords)
        if idx is not None:
            kept.append((sig, v))
            if basis.size == dim:
                break
    if len(kept) != dim:
        raise RuntimeError(f"only {len(kept)} essential signatures found in a weight space of dimension {dim}")
    return kept


def essential_signatures(M: HWModule, order: MonomialOrderSpec, budget: Optional[int] = DEFAULT_BUDGET) -> EssentialBasis:
    """Essential signatures of ``V(lam)``, grouped by weight (module order) and
    increasing within each weight."""
    if order.n != M.rs.n_positive:
        raise OrderError(f"order is on Z^{order.n} but the root system has {M.rs.n_positive} positive roots")
    sigs: List[Signature] = []
    vecs: Dict[Signature, ModuleVector] = {}
    by_weight: Dict[Weight, List[Signature]] = {}
    memo: dict = {}
    for mu in M.weights:
        kept = essential_in_weight(M, order, mu, budget, memo)
        by_weight[mu] = [s for s, _ in kept]
        for s, v in kept:
            sigs.append(s)
            vecs[s] = v
    return EssentialBasis(M.highest_weight, order, sigs, vecs, by_weight)


def pair(functional: Dict[Tuple[Weight, int], Fraction], vec: ModuleVector) -> Fraction:
    """Evaluate a functional given by coordinates in the dual of the module basis."""
    s = Fraction(0)
    for k, c in vec.coords.items():
        f = functional.get((vec.weight, k))
        if f:
            s += f * c
    return s


def signature_of_functional(basis: EssentialBasis, values: Dict[Signature, Fraction]) -> Signature:
    """The order-least essential signature on whose vector the functional is nonzero.

    ``values`` gives the functional on the essential basis vectors (missing
    entries are zero).
    """
    best = None
    bkey = None
    for sig, val in values.items():
        if not val:
            continue
        if sig not in basis.vectors:
            raise ValueError(f"{sig} is not an essential signature of this basis")
        k = basis.order.key(sig.exps)
        if bkey is None or k < bkey:
            best, bkey = sig, k
    if best is None:
        raise ValueError("zero functional has no signature")
    return best


def functional_values(basis: EssentialBasis, functional: Dict[Tuple[Weight, int], Fraction]) -> Dict[Signature, Fraction]:
    """Values of a module-dual functional on every essential basis vector."""
    out = {}
    for sig, v in basis.vectors.items():
        val = pair(functional, v)
        if val:
            out[sig] = val
    return out


def dual_functional(basis: EssentialBasis, sig: Signature) -> Dict[Tuple[Weight, int], Fraction]:
    """The functional that is 1 on v(sig) and 0 on every other essential vector."""
    vec = basis.vectors[sig]
    mu = vec.weight
    sigs = basis.by_weight[mu]
    d = len(sigs)
    # solve <f, v(s_j)> = delta_{j, sig} with f supported on V_mu
    rows = []
    for j, s in enumerate(sigs):
        r = dict(basis.vectors[s].coords)
        r[d + j] = Fraction(1)
        rows.append(r)
    pivots, red = rref(rows)
    k = sigs.index(sig)
    f = {}
    for p, r in zip(pivots, red):
        if p >= d:
            raise RuntimeError("essential vectors are dependent")
        c = r.get(d + k)
        if c:
            f[(mu, p)] = c
    return f
