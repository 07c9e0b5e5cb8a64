"""Toric ideals of integer point configurations.

The toric ideal of points ``a_1, ..., a_n`` is generated by the binomials
``x^u - x^w`` with ``sum u_i a_i == sum w_i a_i``.  It is computed as the
saturation of the lattice-basis ideal by the product of all variables, one
variable at a time: for a homogeneous binomial ideal, a Groebner basis in a
reverse-lexicographic order with ``x_i`` last can be divided by powers of
``x_i`` term-wise.  The final basis is reduced for the requested order.

Binomials are pairs ``(lead, trail)`` of exponent tuples, coefficients +1/-1.
"""

from __future__ import annotations

import heapq
from typing import Callable, List, Optional, Sequence, Tuple

from .linalg import integer_kernel

Monomial = Tuple[int, ...]
Binomial = Tuple[Monomial, Monomial]
OrderKey = Callable[[Monomial], tuple]

DEFAULT_PAIR_BUDGET = 2_000_000


class GroebnerBudgetExceeded(RuntimeError):
    pass


def lex_key(m: Monomial) -> tuple:
    """x_1 > x_2 > ... > x_n lexicographically."""
    return m


def weighted_revlex_key(weights: Sequence[int], last: int) -> OrderKey:
    """Weighted degree, then reverse lexicographic with ``x_last`` as the
    cheapest variable (so a leading term divisible by it forces the trail
    term to be divisible too, for homogeneous binomials)."""
    n = len(weights)
    seq = [i for i in range(n) if i != last] + [last]
    rev = list(reversed(seq))

    def key(m: Monomial) -> tuple:
        return (sum(w * x for w, x in zip(weights, m)),) + tuple(-m[i] for i in rev)

    return key


def _orient(a: Monomial, b: Monomial, key: OrderKey) -> Optional[Binomial]:
    if a == b:
        return None
    return (a, b) if key(a) > key(b) else (b, a)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def normal_form(m: Monomial, basis: Sequence[Binomial]) -> Monomial:
    """Reduce a monomial modulo the binomials (each step replaces lead by trail)."""
    changed = True
    while changed:
        changed = False
        for lead, trail in basis:
            if _divides(lead, m):
                m = tuple(x - l + t for x, l, t in zip(m, lead, trail))
                changed = True
                break
    return m


def _reduce_binomial(b: Binomial, basis: Sequence[Binomial], key: OrderKey) -> Optional[Binomial]:
    return _orient(normal_form(b[0], basis), normal_form(b[1], basis), key)


def buchberger(
    gens: Sequence[Binomial],
    key: OrderKey,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
    grading: Optional[Sequence[int]] = None,
) -> List[Binomial]:
    """Groebner basis of a binomial ideal.

    S-pairs are processed by increasing (weighted) degree of their lcm and
    pruned with the Gebauer-Moeller criteria.
    """
    n = len(gens[0][0]) if gens else 0
    wts = list(grading) if grading is not None else [1] * n

    def deg(m):
        return sum(w * x for w, x in zip(wts, m))

    basis: List[Binomial] = []
    active: List[int] = []
    pairs: List[Tuple[int, int, int, Monomial]] = []  # heap of (deg, i, j, lcm)
    counter = 0

    def update(k: int) -> None:
        nonlocal pairs
        lk = basis[k][0]
        cand = [(i, _lcm(basis[i][0], lk)) for i in active]
        # chain criterion among the new pairs
        keep = []
        for idx, (i, m) in enumerate(cand):
            copr = _coprime(basis[i][0], lk)
            if copr:
                keep.append((i, m, True))
                continue
            dominated = False
            for jdx, (j, m2) in enumerate(cand):
                if jdx != idx and _divides(m2, m) and (m2 != m or jdx < idx):
                    dominated = True
                    break
            if not dominated:
                keep.append((i, m, False))
        # an lcm shared with a coprime pair can be dropped entirely
        copr_lcms = {m for _, m, c in keep if c}
        newp = [(i, m) for i, m, c in keep if not c and m not in copr_lcms]
        old = []
        for d, i, j, m in pairs:
            if _divides(lk, m) and m != _lcm(basis[i][0], lk) and m != _lcm(basis[j][0], lk):
                continue
            old.append((d, i, j, m))
        for i, m in newp:
            old.append((deg(m), i, k, m))
        heapq.heapify(old)
        pairs = old
        active[:] = [i for i in active if not _divides(lk, basis[i][0])]
        active.append(k)

    def insert(b: Binomial) -> None:
        basis.append(b)
        update(len(basis) - 1)

    for g in gens:
        o = _orient(g[0], g[1], key)
        if o:
            r = _reduce_binomial(o, basis, key)
            if r:
                insert(r)
    while pairs:
        d, i, j, m = heapq.heappop(pairs)
        counter += 1
        if counter > pair_budget:
            raise GroebnerBudgetExceeded(f"more than {pair_budget} S-pairs")
        (a, b), (c, e) = basis[i], basis[j]
        s1 = tuple(x - y + z for x, y, z in zip(m, a, b))
        s2 = tuple(x - y + z for x, y, z in zip(m, c, e))
        o = _orient(s1, s2, key)
        if not o:
            continue
        r = _reduce_binomial(o, [basis[t] for t in active], key)
        if r:
            insert(r)
    return [basis[t] for t in active]


def reduce_basis(basis: Sequence[Binomial], key: OrderKey) -> List[Binomial]:
    """Reduced Groebner basis from any Groebner basis (sorted by leading term)."""
    leads = []
    for g in sorted(basis, key=lambda b: key(b[0])):
        if not any(_divides(l[0], g[0]) for l in leads):
            leads.append(g)
    out = []
    for g in leads:
        # leads are already minimal; only the trail needs reducing
        o = _orient(g[0], normal_form(g[1], leads), key)
        if o is None or o[0] != g[0]:
            raise RuntimeError("inconsistent Groebner basis")
        out.append(o)
    out.sort(key=lambda b: key(b[0]))
    return out


def lattice_basis_binomials(kernel: Sequence[Sequence[int]]) -> List[Binomial]:
    out = []
    for u in kernel:
        plus = tuple(max(x, 0) for x in u)
        minus = tuple(max(-x, 0) for x in u)
        out.append((plus, minus))
    return out


def _saturate_variable(basis: Sequence[Binomial], i: int) -> List[Binomial]:
    out = []
    for a, b in basis:
        k = min(a[i], b[i])
        if k:
            a = a[:i] + (a[i] - k,) + a[i + 1:]
            b = b[:i] + (b[i] - k,) + b[i + 1:]
        out.append((a, b))
    return out


def toric_ideal(
    points: Sequence[Sequence[int]],
    grading: Sequence[int],
    key: OrderKey = lex_key,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> List[Binomial]:
    """Reduced Groebner basis of the toric ideal of ``points`` (one per variable).

    ``grading`` must be a positive weight vector making the ideal homogeneous
    (``grading[i] = c . points[i]`` for some linear functional ``c``).
    """
    n = len(points)
    if n == 0:
        return []
    if any(w <= 0 for w in grading):
        raise ValueError("grading must be positive")
    dim = len(points[0])
    matrix = [[points[j][r] for j in range(n)] for r in range(dim)]
    kernel = integer_kernel(matrix)
    gens = lattice_basis_binomials(kernel)
    for i in range(n):
        k = weighted_revlex_key(grading, i)
        gb = buchberger(gens, k, pair_budget, grading)
        gens = _saturate_variable(gb, i)
    gb = buchberger(gens, key, pair_budget, grading)
    return reduce_basis(gb, key)


def is_toric_relation(points: Sequence[Sequence[int]], b: Binomial) -> bool:
    dim = len(points[0]) if points else 0
    lhs = [sum(b[0][j] * points[j][r] for j in range(len(points))) for r in range(dim)]
    rhs = [sum(b[1][j] * points[j][r] for j in range(len(points))) for r in range(dim)]
    return lhs == rhs
