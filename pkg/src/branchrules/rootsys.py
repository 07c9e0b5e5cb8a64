"""Root systems, Chevalley structure constants and the Weyl dimension formula.

Roots are integer tuples in simple-root coordinates.  Weights are integer
tuples in fundamental-weight coordinates (Dynkin labels).  Everything is
exact: ``int`` and ``Fraction`` only.

Simple roots are numbered as follows (ambient vectors in the ``eps`` basis):

=====  ============================================================
A_n    eps_i - eps_{i+1}
B_n    eps_i - eps_{i+1},  eps_n
C_n    eps_i - eps_{i+1},  2 eps_n
D_n    eps_i - eps_{i+1},  eps_{n-1} + eps_n   (n >= 2; D_2 = A_1 x A_1)
E_n    Bourbaki, in the 8-dimensional E_8 lattice
F_4    (eps_1-eps_2-eps_3-eps_4)/2, eps_4, eps_3-eps_4, eps_2-eps_3
G_2    eps_1 - eps_2 (short),  -2 eps_1 + eps_2 + eps_3 (long)
=====  ============================================================

F_4 is numbered from the short end, so ``V(pi_1)`` is 26-dimensional and
``V(pi_4)`` is the adjoint module.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import sympy

Root = Tuple[int, ...]
Weight = Tuple[int, ...]

F = Fraction
HALF = Fraction(1, 2)


class RootSystemError(ValueError):
    pass


def _eps(m: int, *pairs) -> Tuple[Fraction, ...]:
    v = [F(0)] * m
    for i, c in pairs:
        v[i] += F(c)
    return tuple(v)


def ambient_simple_roots(series: str, rank: int) -> List[Tuple[Fraction, ...]]:
    """Simple roots of a built-in type as rational vectors."""
    s, n = series.upper(), rank
    if s == "A" and n >= 1:
        return [_eps(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if s == "B" and n >= 1:
        return [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 1, 1))]
    if s == "C" and n >= 1:
        return [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 1, 2))]
    if s == "D" and n >= 2:
        return [_eps(n, (i, 1), (i + 1, -1)) for i in range(n - 1)] + [_eps(n, (n - 2, 1), (n - 1, 1))]
    if s == "E" and n in (6, 7, 8):
        e8 = [
            tuple([HALF] + [-HALF] * 6 + [HALF]),
            _eps(8, (0, 1), (1, 1)),
            _eps(8, (1, 1), (0, -1)),
            _eps(8, (2, 1), (1, -1)),
            _eps(8, (3, 1), (2, -1)),
            _eps(8, (4, 1), (3, -1)),
            _eps(8, (5, 1), (4, -1)),
            _eps(8, (6, 1), (5, -1)),
        ]
        return e8[:n]
    if s == "F" and n == 4:
        return [
            (HALF, -HALF, -HALF, -HALF),
            _eps(4, (3, 1)),
            _eps(4, (2, 1), (3, -1)),
            _eps(4, (1, 1), (2, -1)),
        ]
    if s == "G" and n == 2:
        return [_eps(3, (0, 1), (1, -1)), _eps(3, (0, -2), (1, 1), (2, 1))]
    raise RootSystemError(f"unknown simple type {series}{rank}")


def _vdot(a, b):
    return sum(x * y for x, y in zip(a, b))


class RootSystem:
    """A (reduced) root system with a fixed ordering of its positive roots.

    ``positive_roots[k]`` is the root called alpha_{k+1} in printed output;
    signatures carry exponents aligned with this list.
    """

    def __init__(
        self,
        series: str,
        rank: int,
        ordering: Optional[Sequence[Root]] = None,
    ):
        self.series = series.upper()
        self.rank = rank
        self.ambient = ambient_simple_roots(self.series, rank)
        n = rank
        self.gram = [[_vdot(self.ambient[i], self.ambient[j]) for j in range(n)] for i in range(n)]
        # cartan[i][j] = <beta_i, beta_j^vee>; row i is beta_i in weight coordinates
        self.cartan = [[int(2 * self.gram[i][j] / self.gram[j][j]) for j in range(n)] for i in range(n)]
        self._canonical = self._generate_positive_roots()
        canon_set = set(self._canonical)
        if ordering is None:
            ordering = self._canonical
        else:
            ordering = [tuple(int(c) for c in r) for r in ordering]
            if len(ordering) != len(canon_set) or set(ordering) != canon_set:
                raise RootSystemError("ordering is not a permutation of the positive roots")
        self.positive_roots: List[Root] = list(ordering)
        self.index: Dict[Root, int] = {r: k for k, r in enumerate(self.positive_roots)}
        self.roots = set(self._canonical) | {tuple(-c for c in r) for r in self._canonical}

    # -- construction -----------------------------------------------------

    def _generate_positive_roots(self) -> List[Root]:
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for a in layer:
                for j in range(n):
                    pair = self.pairing_root_coroot(a, j)
                    q = 0
                    b = list(a)
                    while True:
                        b[j] -= 1
                        if tuple(b) in found:
                            q += 1
                        else:
                            break
                    if q - pair > 0:
                        c = list(a)
                        c[j] += 1
                        c = tuple(c)
                        if c not in found:
                            found.add(c)
                            nxt.append(c)
            layer = nxt
        return sorted(found, key=lambda r: (sum(r), tuple(-x for x in r)))

    # -- basic pairings ---------------------------------------------------

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    def pairing_root_coroot(self, root: Root, j: int) -> int:
        """<root, beta_j^vee> for a root in simple-root coordinates."""
        return sum(root[i] * self.cartan[i][j] for i in range(self.rank))

    def root_to_weight(self, root: Root) -> Weight:
        return tuple(self.pairing_root_coroot(root, j) for j in range(self.rank))

    def form(self, a: Root, b: Root) -> Fraction:
        """Invariant form (a, b) of two vectors in simple-root coordinates."""
        n = self.rank
        return sum(a[i] * b[j] * self.gram[i][j] for i in range(n) for j in range(n) if a[i] and b[j])

    def coroot(self, root: Root) -> Tuple[Fraction, ...]:
        """Coordinates of root^vee over the simple coroots."""
        ll = self.form(root, root)
        return tuple(F(root[i]) * self.gram[i][i] / ll for i in range(self.rank))

    def height(self, root: Root) -> int:
        return sum(root)

    @cached_property
    def simple_roots(self) -> List[Root]:
        return [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]

    @cached_property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @cached_property
    def highest_root(self) -> Root:
        return max(self._canonical, key=sum)

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return len(weight) == self.rank and all(x >= 0 for x in weight)

    # -- ambient coordinates ---------------------------------------------

    @cached_property
    def _cartan_inverse(self) -> List[List[Fraction]]:
        m = sympy.Matrix(self.cartan).inv()
        return [[F(int(m[i, j].p), int(m[i, j].q)) for j in range(self.rank)] for i in range(self.rank)]

    @cached_property
    def fundamental_weights_ambient(self) -> List[Tuple[Fraction, ...]]:
        inv = self._cartan_inverse
        dim = len(self.ambient[0])
        return [
            tuple(sum(inv[i][j] * self.ambient[j][k] for j in range(self.rank)) for k in range(dim))
            for i in range(self.rank)
        ]

    def root_to_ambient(self, root: Root) -> Tuple[Fraction, ...]:
        dim = len(self.ambient[0])
        return tuple(sum(root[i] * self.ambient[i][k] for i in range(self.rank)) for k in range(dim))

    def ambient_to_root(self, vec: Sequence) -> Root:
        """Express an ambient vector in simple-root coordinates (must be integral)."""
        vec = tuple(F(x) for x in vec)
        coeffs = [self._pair_ambient(vec, j) for j in range(self.rank)]
        # coeffs are <vec, beta_j^vee>; convert weight -> root coordinates
        inv = self._cartan_inverse
        out = []
        for i in range(self.rank):
            c = sum(coeffs[j] * inv[j][i] for j in range(self.rank))
            if c.denominator != 1:
                raise RootSystemError(f"{vec} is not in the root lattice")
            out.append(int(c))
        if self.root_to_ambient(tuple(out)) != vec:
            raise RootSystemError(f"{vec} is not in the span of the simple roots")
        return tuple(out)

    def _pair_ambient(self, vec, j) -> Fraction:
        b = self.ambient[j]
        return 2 * _vdot(vec, b) / _vdot(b, b)

    def weight_to_ambient(self, weight: Sequence[int]) -> Tuple[Fraction, ...]:
        fw = self.fundamental_weights_ambient
        dim = len(self.ambient[0])
        return tuple(sum(weight[i] * fw[i][k] for i in range(self.rank)) for k in range(dim))

    def ambient_to_weight(self, vec: Sequence) -> Weight:
        vec = tuple(F(x) for x in vec)
        out = []
        for j in range(self.rank):
            c = self._pair_ambient(vec, j)
            if c.denominator != 1:
                raise RootSystemError(f"{vec} is not an integral weight")
            out.append(int(c))
        return tuple(out)

    # -- Weyl dimension formula -------------------------------------------

    def weyl_dim(self, weight: Sequence[int]) -> int:
        """dim V(weight) = prod over positive roots of <weight+rho, a^vee>/<rho, a^vee>."""
        if not self.is_dominant(weight):
            raise RootSystemError(f"weight {tuple(weight)} is not dominant")
        num = F(1)
        for root in self._canonical:
            cv = self.coroot(root)
            num *= sum(cv[i] * (weight[i] + 1) for i in range(self.rank)) / sum(cv)
        assert num.denominator == 1
        return int(num)

    def weyl_dim_polynomial(self, symbols: Optional[Sequence[sympy.Symbol]] = None) -> sympy.Poly:
        """The Weyl dimension formula as a polynomial in Dynkin labels t_1..t_n."""
        if symbols is None:
            symbols = sympy.symbols(f"t1:{self.rank + 1}")
        expr = sympy.Integer(1)
        for root in self._canonical:
            cv = self.coroot(root)
            lin = sum(sympy.Rational(c.numerator, c.denominator) * (t + 1) for c, t in zip(cv, symbols))
            expr *= lin / sympy.Rational(sum(cv))
        return sympy.Poly(sympy.expand(expr), *symbols, domain="QQ")

    # -- structure constants --------------------------------------------

    @cached_property
    def extraspecial(self) -> Dict[Root, Tuple[Root, Root]]:
        """Extraspecial pair (alpha, beta) of each non-simple positive root.

        alpha is the first positive root, in height-then-lex order, with
        xi - alpha a root; it is always simple.
        """
        pos = set(self._canonical)
        out = {}
        for xi in self._canonical:
            if sum(xi) == 1:
                continue
            for a in self._canonical:
                b = tuple(x - y for x, y in zip(xi, a))
                if b in pos:
                    out[xi] = (a, b)
                    break
        return out

    def string_below(self, alpha: Root, beta: Root) -> int:
        """Largest r with beta - r*alpha a root."""
        r = 0
        while tuple(b - (r + 1) * a for a, b in zip(alpha, beta)) in self.roots:
            r += 1
        return r

    @cached_property
    def _canon_rank(self) -> Dict[Root, int]:
        return {r: k for k, r in enumerate(self._canonical)}

    @cached_property
    def structure_constants(self) -> Dict[Tuple[Root, Root], int]:
        """N_{a,b} with [e_a, e_b] = N_{a,b} e_{a+b} for all roots a, b with a+b a root.

        Signs are fixed by N = +(p+1) on extraspecial pairs and
        N_{-a,-b} = -N_{a,b}; the rest follows from the Chevalley relations.
        """
        memo: Dict[Tuple[Root, Root], Fraction] = {}
        roots = self.roots
        rk = self._canon_rank

        def neg(r):
            return tuple(-x for x in r)

        def add(a, b):
            return tuple(x + y for x, y in zip(a, b))

        def positive(r):
            return any(x > 0 for x in r)

        def norm(r):
            return self.form(r, r)

        def N(a, b) -> Fraction:
            key = (a, b)
            if key in memo:
                return memo[key]
            s = add(a, b)
            if s not in roots:
                return F(0)
            pa, pb = positive(a), positive(b)
            if pa and pb:
                if rk[a] > rk[b]:
                    val = -N(b, a)
                else:
                    a1, b1 = self.extraspecial[s]
                    if (a, b) == (a1, b1):
                        val = F(self.string_below(a, b) + 1)
                    else:
                        t = F(0)
                        d1 = add(b, neg(a1))
                        if d1 in roots:
                            t += N(b, neg(a1)) * N(a, neg(b1)) / norm(d1)
                        d2 = add(a, neg(a1))
                        if d2 in roots:
                            t += N(neg(a1), a) * N(b, neg(b1)) / norm(d2)
                        n_neg = -F(self.string_below(a1, b1) + 1)
                        val = -norm(s) * t / n_neg
            elif not pa and not pb:
                val = -N(neg(a), neg(b))
            else:
                g = neg(s)
                if positive(g) == pa:
                    val = norm(g) / norm(b) * N(g, a)
                else:
                    val = norm(g) / norm(a) * N(b, g)
            memo[key] = val
            return val

        out = {}
        allroots = sorted(roots)
        for a in allroots:
            for b in allroots:
                if add(a, b) in roots:
                    v = N(a, b)
                    assert v.denominator == 1
                    out[(a, b)] = int(v)
        return out

    def bracket(self, x: Dict, y: Dict) -> Dict:
        """Lie bracket in the Chevalley basis.

        Elements are dicts keyed by ``('e', root)`` or ``('h', i)``
        (h_i the simple coroots), values rational.
        """
        out: Dict = {}

        def acc(k, c):
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)

        nc = self.structure_constants
        for kx, cx in x.items():
            for ky, cy in y.items():
                c = cx * cy
                if kx[0] == "h" and ky[0] == "h":
                    continue
                if kx[0] == "h":
                    acc(ky, c * self.pairing_root_coroot(ky[1], kx[1]))
                    continue
                if ky[0] == "h":
                    acc(kx, -c * self.pairing_root_coroot(kx[1], ky[1]))
                    continue
                a, b = kx[1], ky[1]
                s = tuple(p + q for p, q in zip(a, b))
                if not any(s):
                    cv = self.coroot(a)
                    for i, ci in enumerate(cv):
                        if ci:
                            acc(("h", i), c * ci)
                elif s in self.roots:
                    acc(("e", s), c * nc[(a, b)])
        return out

    def basis_elements(self) -> List[Tuple]:
        return [("e", r) for r in sorted(self.roots)] + [("h", i) for i in range(self.rank)]

    def check_jacobi(self) -> List[Tuple]:
        """Triples of basis elements violating the Jacobi identity (empty if none)."""
        basis = self.basis_elements()
        bad = []
        memo = {}

        def br(k1, k2):
            key = (k1, k2)
            if key not in memo:
                memo[key] = self.bracket({k1: 1}, {k2: 1})
            return memo[key]

        def br_vec(k, vec):
            out = {}
            for k2, c in vec.items():
                for k3, d in br(k, k2).items():
                    v = out.get(k3, 0) + c * d
                    if v:
                        out[k3] = v
                    else:
                        out.pop(k3, None)
            return out

        for i, x in enumerate(basis):
            for j in range(i + 1, len(basis)):
                y = basis[j]
                for k in range(j + 1, len(basis)):
                    z = basis[k]
                    tot = {}
                    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                        for kk, v in br_vec(a, br(b, c)).items():
                            tot[kk] = tot.get(kk, 0) + v
                    if any(tot.values()):
                        bad.append((x, y, z))
        return bad

    # -- misc -------------------------------------------------------------

    def dominant_weights_up_to(self, total: int) -> List[Weight]:
        """All dominant weights with sum of Dynkin labels <= total."""
        out = []
        for w in product(range(total + 1), repeat=self.rank):
            if sum(w) <= total:
                out.append(w)
        return sorted(out, key=lambda w: (sum(w), tuple(-x for x in w)))

    def fundamental_weight(self, i: int) -> Weight:
        """pi_i, 1-based."""
        return tuple(int(j == i - 1) for j in range(self.rank))

    def name(self) -> str:
        return f"{self.series}{self.rank}"

    def to_dict(self) -> dict:
        return {
            "series": self.series,
            "rank": self.rank,
            "ordering": [list(r) for r in self.positive_roots],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def ordering_hash(self) -> str:
        import hashlib

        return hashlib.sha1(repr(self.positive_roots).encode()).hexdigest()[:12]

    def __repr__(self) -> str:
        return f"RootSystem({self.series}{self.rank}, N={self.n_positive})"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RootSystem)
            and (self.series, self.rank, self.positive_roots) == (other.series, other.rank, other.positive_roots)
        )

    def __hash__(self) -> int:
        return hash((self.series, self.rank, tuple(self.positive_roots)))


def build_root_system(series: str, rank: int, ordering: Optional[Sequence[Root]] = None) -> RootSystem:
    """Root system of type ``series``+``rank`` with the given positive-root ordering.

    ``ordering`` lists positive roots in simple-root coordinates.  When it is
    omitted the roots are sorted by height, then lexicographically so that
    beta_1 comes before beta_2.
    """
    return RootSystem(series, rank, ordering)


def ordering_from_ambient(series: str, rank: int, vectors: Sequence[Sequence]) -> List[Root]:
    """Convert a list of positive roots given as ambient vectors to root coordinates."""
    tmp = RootSystem(series, rank)
    return [tmp.ambient_to_root(v) for v in vectors]


def root_system_from_dict(d: dict) -> RootSystem:
    ordering = d.get("ordering")
    return RootSystem(d["series"], int(d["rank"]), [tuple(r) for r in ordering] if ordering else None)


def root_system_from_json(text: str) -> RootSystem:
    return root_system_from_dict(json.loads(text))


def expected_positive_count(series: str, rank: int) -> int:
    s, n = series.upper(), rank
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n, -1),
        "F": 24,
        "G": 6,
    }[s]


def weyl_dim_product(rs: RootSystem, weight: Sequence[int]) -> int:
    """Same formula as ``RootSystem.weyl_dim`` evaluated through ambient vectors.

    Kept separate so tests can compare the two routes.
    """
    lam = [F(x) for x in rs.weight_to_ambient(weight)]
    rho = [F(x) for x in rs.weight_to_ambient(rs.rho)]
    num, den = F(1), F(1)
    for r in rs.positive_roots:
        a = rs.root_to_ambient(r)
        num *= _vdot([x + y for x, y in zip(lam, rho)], a)
        den *= _vdot(rho, a)
    val = num / den
    assert val.denominator == 1
    return int(val)


__all__ = [
    "RootSystem",
    "RootSystemError",
    "build_root_system",
    "ordering_from_ambient",
    "root_system_from_dict",
    "root_system_from_json",
    "expected_positive_count",
    "weyl_dim_product",
]
