"""Exact sparse linear algebra over the rationals and the integers.

Vectors are ``dict[int, Fraction]`` with no zero entries stored.  Matrices
are lists of such vectors (rows or columns, as documented per function).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

SparseVec = Dict[int, Fraction]


def axpy(dst: SparseVec, c, src: SparseVec) -> None:
    """In place ``dst += c * src``."""
    if not c:
        return
    for k, v in src.items():
        nv = dst.get(k, 0) + c * v
        if nv:
            dst[k] = nv
        else:
            dst.pop(k, None)


def scaled(c, src: SparseVec) -> SparseVec:
    if not c:
        return {}
    return {k: c * v for k, v in src.items()}


def dot(a: SparseVec, b: SparseVec):
    if len(a) > len(b):
        a, b = b, a
    s = 0
    for k, v in a.items():
        w = b.get(k)
        if w is not None:
            s += v * w
    return s


def matvec(cols: Sequence[SparseVec], vec: SparseVec) -> SparseVec:
    """Apply a matrix stored column-wise to a sparse vector."""
    out: SparseVec = {}
    for j, c in vec.items():
        axpy(out, c, cols[j])
    return out


def matmul(a_cols: Sequence[SparseVec], b_cols: Sequence[SparseVec]) -> List[SparseVec]:
    return [matvec(a_cols, col) for col in b_cols]


class IncrementalBasis:
    """Grow a basis one vector at a time, remembering how every vector that
    was offered decomposes over the accepted ones.

    ``add(v)`` returns ``(index, None)`` when ``v`` is new (it becomes basis
    vector ``index``) and ``(None, coords)`` when ``v`` already lies in the
    span, with ``v == sum(coords[k] * basis[k])``.
    """

    def __init__(self) -> None:
        self.size = 0
        self._pivots: List[int] = []  # sorted
        # pivot -> (echelon row with 1 at pivot, row expressed over basis)
        self._rows: Dict[int, Tuple[SparseVec, SparseVec]] = {}

    def reduce(self, vec: SparseVec) -> Tuple[SparseVec, SparseVec]:
        res = dict(vec)
        combo: SparseVec = {}
        for p in self._pivots:
            c = res.get(p)
            if c is None:
                continue
            row, expr = self._rows[p]
            axpy(res, -c, row)
            axpy(combo, c, expr)
        return res, combo

    def add(self, vec: SparseVec) -> Tuple[Optional[int], Optional[SparseVec]]:
        res, combo = self.reduce(vec)
        if not res:
            return None, combo
        idx = self.size
        self.size += 1
        p = min(res)
        inv = 1 / Fraction(res[p])
        row = {k: v * inv for k, v in res.items()}
        expr = {k: -v * inv for k, v in combo.items()}
        expr[idx] = inv
        self._rows[p] = (row, expr)
        lo, hi = 0, len(self._pivots)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._pivots[mid] < p:
                lo = mid + 1
            else:
                hi = mid
        self._pivots.insert(lo, p)
        return idx, None

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)[0]


def rref(rows: Iterable[SparseVec]) -> Tuple[List[int], List[SparseVec]]:
    """Reduced row echelon form.  Returns pivot columns and the matching rows."""
    ech: Dict[int, SparseVec] = {}
    order: List[int] = []
    for r in rows:
        v = dict(r)
        for p in order:
            c = v.get(p)
            if c is not None:
                axpy(v, -c, ech[p])
        if not v:
            continue
        p = min(v)
        inv = 1 / Fraction(v[p])
        v = {k: x * inv for k, x in v.items()}
        for q in order:
            c = ech[q].get(p)
            if c is not None:
                axpy(ech[q], -c, v)
        ech[p] = v
        order.append(p)
    order.sort()
    return order, [ech[p] for p in order]


def rank(rows: Iterable[SparseVec]) -> int:
    b = IncrementalBasis()
    for r in rows:
        b.add(r)
    return b.size


def nullspace(rows: Iterable[SparseVec], ncols: int) -> List[SparseVec]:
    """Basis of ``{x : r . x == 0 for every row r}`` in ``Q^ncols``."""
    pivots, red = rref(rows)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x: SparseVec = {f: Fraction(1)}
        for p, r in zip(pivots, red):
            c = r.get(f)
            if c:
                x[p] = -c
        basis.append(x)
    return basis


def integer_kernel(matrix: Sequence[Sequence[int]]) -> List[List[int]]:
    """A lattice basis of ``{u in Z^n : M u = 0}`` for an ``m x n`` integer matrix.

    Row-reduces ``[M^T | I_n]`` with unimodular integer operations; the rows
    whose left block vanishes span the (saturated) kernel lattice.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    rows = [[matrix[i][j] for i in range(m)] + [int(j == k) for k in range(n)] for j in range(n)]
    r = 0
    for c in range(m):
        piv = [i for i in range(r, n) if rows[i][c]]
        if not piv:
            continue
        while True:
            piv = [i for i in range(r, n) if rows[i][c]]
            best = min(piv, key=lambda i: abs(rows[i][c]))
            rows[r], rows[best] = rows[best], rows[r]
            done = True
            for i in range(r + 1, n):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                    if rows[i][c]:
                        done = False
            if done:
                break
        r += 1
    kernel = [row[m:] for row in rows[r:]]
    return [_primitive(v) for v in kernel]


def _primitive(v: List[int]) -> List[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        v = [x // g for x in v]
    for x in v:
        if x:
            if x < 0:
                v = [-y for y in v]
            break
    return v


def integer_rank(matrix: Sequence[Sequence[int]]) -> int:
    return rank({j: Fraction(x) for j, x in enumerate(row) if x} for row in matrix)


def inverse(matrix: Sequence[Sequence]) -> List[List[Fraction]]:
    """Inverse of a square rational matrix (dense rows in, dense rows out)."""
    n = len(matrix)
    rows = []
    for i in range(n):
        r = {j: Fraction(x) for j, x in enumerate(matrix[i]) if x}
        r[n + i] = Fraction(1)
        rows.append(r)
    pivots, red = rref(rows)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [[red[i].get(n + j, Fraction(0)) for j in range(n)] for i in range(n)]
