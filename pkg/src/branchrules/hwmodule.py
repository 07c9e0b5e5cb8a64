"""Irreducible highest-weight modules realized over the rationals.

``V(lam)`` is built weight space by weight space, going down from the
highest weight.  For a weight ``mu != lam`` the map
``w -> (e_1 w, ..., e_n w)`` is injective on ``V(lam)_mu``, so a candidate
vector ``f_i b`` (``b`` a basis vector one level up) is known exactly by its
images under the raising operators, and those images only involve weight
spaces that are already built:

    e_j f_i b = f_i e_j b + delta_ij <mu + beta_i, beta_i^vee> b.

Every weight space gets a basis chosen among these candidates; the matrices
of all ``e_i`` and ``f_i`` fall out of the same elimination.
"""

from __future__ import annotations

import os
import pickle
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import IncrementalBasis, SparseVec, axpy, matmul, matvec, scaled
from .rootsys import Root, RootSystem, RootSystemError, Weight

DEFAULT_DIM_CAP = 20000
CACHE_VERSION = 1

Matrix = List[SparseVec]  # column-wise


class ModuleTooLarge(RuntimeError):
    """Raised when ``dim V(lam)`` exceeds the configured cap."""


@dataclass
class ModuleVector:
    weight: Weight
    coords: SparseVec = field(default_factory=dict)

    def __bool__(self) -> bool:
        return bool(self.coords)

    def scale(self, c) -> "ModuleVector":
        return ModuleVector(self.weight, scaled(c, self.coords))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class HWModule:
    """The irreducible module ``V(highest_weight)`` of ``rs``.

    Weight spaces are stored independently; ``E[i][mu]`` and ``F[i][mu]`` are
    the column-wise matrices of ``e_i`` and ``f_i`` restricted to ``V_mu``.
    Root vectors ``e_{+-alpha}`` for non-simple alpha are Chevalley-normalized
    commutators of these, built on demand.
    """

    def __init__(self, rs: RootSystem, highest_weight: Sequence[int], dim_cap: int = DEFAULT_DIM_CAP):
        hw = tuple(int(x) for x in highest_weight)
        if not rs.is_dominant(hw):
            raise RootSystemError(f"highest weight {hw} is not dominant")
        expected = rs.weyl_dim(hw)
        if dim_cap is not None and expected > dim_cap:
            raise ModuleTooLarge(f"dim V{hw} = {expected} exceeds cap {dim_cap}; raise dim_cap to build it")
        self.rs = rs
        self.highest_weight = hw
        self.expected_dim = expected
        self._simple_w = [rs.root_to_weight(b) for b in rs.simple_roots]
        n = rs.rank
        self.dims: Dict[Weight, int] = {}
        self.weights: List[Weight] = []
        self.depth: Dict[Weight, int] = {}
        self.E: List[Dict[Weight, Matrix]] = [dict() for _ in range(n)]
        self.F: List[Dict[Weight, Matrix]] = [dict() for _ in range(n)]
        self._root_ops: Dict[Tuple[int, Root, Weight], Matrix] = {}
        self._build()

    # -- construction -------------------------------------------------------

    def _build(self) -> None:
        rs = self.rs
        n = rs.rank
        lam = self.highest_weight
        self.dims[lam] = 1
        self.weights.append(lam)
        self.depth[lam] = 0
        layer = [lam]
        d = 0
        while layer:
            d += 1
            cand_weights = []
            seen = set()
            for nu in layer:
                for i in range(n):
                    mu = _sub(nu, self._simple_w[i])
                    if mu not in seen:
                        seen.add(mu)
                        cand_weights.append(mu)
            nxt = []
            for mu in cand_weights:
                if self._build_weight_space(mu):
                    self.depth[mu] = d
                    self.weights.append(mu)
                    nxt.append(mu)
            # operators into weights that turned out empty must still be recorded
            layer = nxt
        total = sum(self.dims.values())
        if total != self.expected_dim:
            raise RuntimeError(f"module construction produced dim {total}, Weyl formula says {self.expected_dim}")

    def _build_weight_space(self, mu: Weight) -> bool:
        n = self.rs.rank
        sw = self._simple_w
        up = [_add(mu, sw[j]) for j in range(n)]
        up_dim = [self.dims.get(w, 0) for w in up]
        offsets = []
        off = 0
        for j in range(n):
            offsets.append(off)
            off += up_dim[j]
        basis = IncrementalBasis()
        fcols: Dict[int, List[SparseVec]] = {}
        images: List[SparseVec] = []
        for i in range(n):
            if not up_dim[i]:
                continue
            src = up[i]
            cols = []
            hval = mu[i] + 2
            for b in range(up_dim[i]):
                img: SparseVec = {}
                for j in range(n):
                    if not up_dim[j]:
                        continue
                    # e_j f_i b = f_i (e_j b) + delta_ij h_i b
                    blk: SparseVec = {}
                    ej = self.E[j].get(src)
                    if ej is not None:
                        ejb = ej[b]
                        if ejb:
                            blk = matvec(self.F[i][_add(src, sw[j])], ejb)
                    if i == j and hval:
                        blk = dict(blk)
                        axpy(blk, hval, {b: Fraction(1)})
                    o = offsets[j]
                    for k, v in blk.items():
                        img[o + k] = v
                idx, coords = basis.add(img)
                if idx is not None:
                    images.append(img)
                    cols.append({idx: Fraction(1)})
                else:
                    cols.append(coords)
            fcols[i] = cols
        dim = basis.size
        for i, cols in fcols.items():
            self.F[i][up[i]] = cols if dim else [dict() for _ in cols]
        if not dim:
            return False
        self.dims[mu] = dim
        for j in range(n):
            if not up_dim[j]:
                continue
            o, m = offsets[j], up_dim[j]
            self.E[j][mu] = [{k - o: v for k, v in img.items() if o <= k < o + m} for img in images]
        return True

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def has_weight(self, mu: Weight) -> bool:
        return mu in self.dims

    def highest_vector(self) -> ModuleVector:
        return ModuleVector(self.highest_weight, {0: Fraction(1)})

    def simple_op(self, raising: bool, i: int, mu: Weight) -> Optional[Matrix]:
        """Matrix of e_i (raising) or f_i on V_mu; None when the target is zero."""
        table = self.E[i] if raising else self.F[i]
        m = table.get(mu)
        if m is None and mu in self.dims:
            return None
        return m

    # -- root vectors ---------------------------------------------------------

    def root_op(self, root: Root, sign: int, mu: Weight) -> Optional[Matrix]:
        """Matrix of e_{sign*root} on V_mu (root positive), or None if it acts by zero.

        Non-simple root vectors are defined through the extraspecial pair
        (beta_i, beta) of the root: e_xi = [e_i, e_beta] / N_{beta_i, beta} and
        likewise for the negatives, which makes them a Chevalley basis.
        """
        if mu not in self.dims:
            return None
        key = (sign, root, mu)
        if key in self._root_ops:
            return self._root_ops[key]
        rs = self.rs
        target = _add(mu, rs.root_to_weight(root)) if sign > 0 else _sub(mu, rs.root_to_weight(root))
        if target not in self.dims:
            res = None
        elif sum(root) == 1:
            i = root.index(1)
            res = self.simple_op(sign > 0, i, mu)
        else:
            a, b = rs.extraspecial[root]
            i = a.index(1)
            if sign > 0:
                nconst = rs.structure_constants[(a, b)]
            else:
                nconst = rs.structure_constants[(tuple(-x for x in a), tuple(-x for x in b))]
            wa = rs.root_to_weight(a)
            wb = rs.root_to_weight(b)
            step = (lambda w, r: _add(w, r)) if sign > 0 else (lambda w, r: _sub(w, r))
            dim_mu = self.dims[mu]
            cols: Matrix = [dict() for _ in range(dim_mu)]
            # [x_a, x_b] = x_a x_b - x_b x_a
            m1 = self.root_op(b, sign, mu)
            if m1 is not None:
                m2 = self.root_op(a, sign, step(mu, wb))
                if m2 is not None:
                    for c, col in enumerate(matmul(m2, m1)):
                        axpy(cols[c], 1, col)
            m1 = self.root_op(a, sign, mu)
            if m1 is not None:
                m2 = self.root_op(b, sign, step(mu, wa))
                if m2 is not None:
                    for c, col in enumerate(matmul(m2, m1)):
                        axpy(cols[c], -1, col)
            inv = Fraction(1, nconst)
            res = [scaled(inv, col) for col in cols]
        self._root_ops[key] = res
        return res

    def apply_root(self, root: Root, sign: int, vec: ModuleVector) -> ModuleVector:
        w = self.rs.root_to_weight(root)
        target = _add(vec.weight, w) if sign > 0 else _sub(vec.weight, w)
        if not vec.coords:
            return ModuleVector(target, {})
        m = self.root_op(root, sign, vec.weight)
        if m is None:
            return ModuleVector(target, {})
        return ModuleVector(target, matvec(m, vec.coords))

    def apply_cartan(self, i: int, vec: ModuleVector) -> ModuleVector:
        return vec.scale(vec.weight[i])

    def apply_element(self, element: Dict, vec: ModuleVector) -> Dict[Weight, SparseVec]:
        """Apply a Lie algebra element (keys ``('e', root)`` with root of either
        sign, or ``('h', i)``) to a weight vector.  Returns weight -> coords."""
        out: Dict[Weight, SparseVec] = {}
        for key, c in element.items():
            if key[0] == "h":
                w, coords = vec.weight, scaled(vec.weight[key[1]], vec.coords)
            else:
                r = key[1]
                if any(x > 0 for x in r):
                    res = self.apply_root(r, 1, vec)
                else:
                    res = self.apply_root(tuple(-x for x in r), -1, vec)
                w, coords = res.weight, res.coords
            if coords:
                acc = out.setdefault(w, {})
                axpy(acc, c, coords)
                if not acc:
                    del out[w]
        return out

    # -- consistency checks ---------------------------------------------------

    def check_relations(self) -> List[str]:
        """Exact check of [e_i, f_j] = delta_ij h_i and the Serre relations on
        every weight space.  Returns a list of failure descriptions."""
        rs = self.rs
        n = rs.rank
        bad = []
        for mu, d in self.dims.items():
            for c in range(d):
                v = ModuleVector(mu, {c: Fraction(1)})
                for i in range(n):
                    for j in range(n):
                        ef = self._word([("e", i), ("f", j)], v)
                        fe = self._word([("f", j), ("e", i)], v)
                        diff = dict(ef.coords) if ef.weight == fe.weight else None
                        axpy(diff, -1, fe.coords)
                        if i == j:
                            axpy(diff, -mu[i], v.coords)
                        if diff:
                            bad.append(f"[e{i+1},f{j+1}] on {mu}")
                for i in range(n):
                    for j in range(n):
                        if i == j:
                            continue
                        m = 1 - rs.cartan[j][i]
                        for kind in ("e", "f"):
                            tot: SparseVec = {}
                            for k in range(m + 1):
                                word = [(kind, i)] * (m - k) + [(kind, j)] + [(kind, i)] * k
                                w = self._word(word, v)
                                axpy(tot, (-1) ** k * _binom(m, k), w.coords)
                            if tot:
                                bad.append(f"Serre {kind}{i+1}^{m} {kind}{j+1} on {mu}")
        return bad

    def _word(self, word, v: ModuleVector) -> ModuleVector:
        """Apply a product of simple operators; the rightmost acts first."""
        for kind, i in reversed(word):
            v = self.apply_root(self.rs.simple_roots[i], 1 if kind == "e" else -1, v)
        return v

    def check_root_brackets(self, pairs: Optional[Sequence[Tuple[Root, Root]]] = None) -> List[str]:
        """Verify [e_a, e_b] = N_{a,b} e_{a+b} and [e_a, e_-a] = h_a on every weight space."""
        rs = self.rs
        allroots = sorted(rs.roots)
        if pairs is None:
            pairs = [(a, b) for a in allroots for b in allroots if a != b]
        bad = []

        def el(r):
            return {("e", r): 1}

        for a, b in pairs:
            s = _add(a, b)
            if any(s) and s not in rs.roots:
                expected = {}
            elif not any(s):
                expected = {("h", i): c for i, c in enumerate(rs.coroot(a)) if c}
            else:
                expected = {("e", s): rs.structure_constants[(a, b)]}
            for mu, d in self.dims.items():
                for c in range(d):
                    v = ModuleVector(mu, {c: Fraction(1)})
                    ab = _apply_seq(self, [el(a), el(b)], v)
                    ba = _apply_seq(self, [el(b), el(a)], v)
                    ex = self.apply_element(expected, v)
                    keys = set(ab) | set(ba) | set(ex)
                    for w in keys:
                        t = dict(ab.get(w, {}))
                        axpy(t, -1, ba.get(w, {}))
                        axpy(t, -1, ex.get(w, {}))
                        if t:
                            bad.append(f"[{a},{b}] on {mu}")
                            break
        return bad

    # -- signatures -----------------------------------------------------------

    def apply_exponents(self, exps: Sequence[int], memo: Optional[dict] = None) -> ModuleVector:
        """e_{-alpha_1}^{p_1} ... e_{-alpha_N}^{p_N} v_lam (alpha_N powers act first).

        ``memo`` (a dict owned by the caller) caches partial products keyed by
        exponent suffixes, which many signatures of one weight share.
        """
        roots = self.rs.positive_roots
        N = len(roots)
        vec = self.highest_vector()
        start = N
        if memo is not None:
            for k in range(N):
                key = tuple(exps[k:])
                hit = memo.get(key)
                if hit is not None:
                    vec = hit
                    start = k
                    break
        for k in range(start - 1, -1, -1):
            for _ in range(exps[k]):
                vec = self.apply_root(roots[k], -1, vec)
                if not vec.coords:
                    break
            if memo is not None:
                memo[tuple(exps[k:])] = vec
            if not vec.coords:
                w = self.highest_weight
                for kk, p in enumerate(exps):
                    if p:
                        w = _sub(w, tuple(p * x for x in self.rs.root_to_weight(roots[kk])))
                return ModuleVector(w, {})
        return vec

    # -- persistence ----------------------------------------------------------

    def cache_key(self) -> str:
        hw = "_".join(map(str, self.highest_weight))
        return f"{self.rs.series}{self.rs.rank}-{self.rs.ordering_hash()}-{hw}-v{CACHE_VERSION}"

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_root_ops"] = {}
        return state

    def __repr__(self) -> str:
        return f"HWModule({self.rs.name()}, {self.highest_weight}, dim={self.dim})"


def _binom(n, k):
    from math import comb

    return comb(n, k)


def _apply_seq(M: HWModule, elements: List[Dict], v: ModuleVector) -> Dict[Weight, SparseVec]:
    """Apply a product of Lie algebra elements (first in the list acts last)."""
    cur: Dict[Weight, SparseVec] = {v.weight: v.coords}
    for el in reversed(elements):
        nxt: Dict[Weight, SparseVec] = {}
        for w, coords in cur.items():
            for w2, c2 in M.apply_element(el, ModuleVector(w, coords)).items():
                acc = nxt.setdefault(w2, {})
                axpy(acc, 1, c2)
        cur = {w: c for w, c in nxt.items() if c}
    return cur


def build_module(
    rs: RootSystem,
    highest_weight: Sequence[int],
    dim_cap: Optional[int] = DEFAULT_DIM_CAP,
    cache_dir: Optional[str] = None,
) -> HWModule:
    """Build ``V(highest_weight)``, optionally through an on-disk pickle cache."""
    hw = tuple(int(x) for x in highest_weight)
    path = None
    if cache_dir:
        hwk = "_".join(map(str, hw))
        path = os.path.join(cache_dir, f"{rs.series}{rs.rank}-{rs.ordering_hash()}-{hwk}-v{CACHE_VERSION}.pkl")
        if os.path.exists(path):
            with open(path, "rb") as fh:
                M = pickle.load(fh)
            M.rs = rs
            return M
    M = HWModule(rs, hw, dim_cap=dim_cap)
    if path:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            pickle.dump(M, fh)
        os.replace(tmp, path)
    return M


def apply_signature(M: HWModule, sig) -> ModuleVector:
    """The vector v(sig) in M."""
    if tuple(sig.hw) != M.highest_weight:
        raise ValueError(f"signature highest weight {sig.hw} does not match module {M.highest_weight}")
    return M.apply_exponents(sig.exps)


# -- Freudenthal multiplicity formula ---------------------------------------------


def freudenthal_multiplicities(rs: RootSystem, highest_weight: Sequence[int]) -> Dict[Weight, int]:
    """All weight multiplicities of V(highest_weight) by Freudenthal's recursion.

    Independent of the module construction: it only uses the invariant form.
    """
    lam = tuple(highest_weight)
    if not rs.is_dominant(lam):
        raise RootSystemError(f"weight {lam} is not dominant")
    n = rs.rank
    inv = rs._cartan_inverse
    # weights in root coordinates relative to lam are easier to bound; the form on
    # weights uses G_w = A^{-1} D where D_jj = (beta_j, beta_j)/2
    dvec = [rs.gram[j][j] / 2 for j in range(n)]

    def wform(a, b):
        return sum(a[i] * inv[i][j] * dvec[j] * b[j] for i in range(n) for j in range(n) if a[i] and b[j])

    pos_w = [rs.root_to_weight(r) for r in rs._canonical]
    rho = rs.rho
    lr = _add(lam, rho)
    c_lam = wform(lr, lr)
    mult: Dict[Weight, int] = {lam: 1}
    layer = [lam]
    seen = {lam}
    while layer:
        nxt = []
        cands = []
        for nu in layer:
            for i in range(n):
                mu = _sub(nu, rs.root_to_weight(rs.simple_roots[i]))
                if mu not in seen:
                    seen.add(mu)
                    cands.append(mu)
        for mu in cands:
            mr = _add(mu, rho)
            den = c_lam - wform(mr, mr)
            if den == 0:
                continue
            s = Fraction(0)
            for a in pos_w:
                k = 1
                while True:
                    w = _add(mu, tuple(k * x for x in a))
                    m = mult.get(w)
                    if m is None:
                        # multiplicities vanish past the top of an alpha-string
                        if not _above_possible(w, lam, rs):
                            break
                        k += 1
                        continue
                    s += m * wform(w, a)
                    k += 1
            val = 2 * s / den
            assert val.denominator == 1
            if val:
                mult[mu] = int(val)
                nxt.append(mu)
        layer = nxt
    return mult


def _above_possible(w: Weight, lam: Weight, rs: RootSystem) -> bool:
    """Whether lam - w is a nonnegative combination of simple roots."""
    diff = _sub(lam, w)
    inv = rs._cartan_inverse
    n = rs.rank
    for i in range(n):
        c = sum(diff[j] * inv[j][i] for j in range(n))
        if c < 0:
            return False
    return True


def freudenthal_multiplicity(rs: RootSystem, highest_weight: Sequence[int], mu: Sequence[int]) -> int:
    return freudenthal_multiplicities(rs, highest_weight).get(tuple(mu), 0)
