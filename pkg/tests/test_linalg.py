from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from branchrules.linalg import IncrementalBasis, integer_kernel, integer_rank, inverse, nullspace, rank, rref

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m))
    )


def sparse(row):
    return {j: Fraction(x) for j, x in enumerate(row) if x}


@given(matrices())
def test_rank_matches_sympy(mat):
    assert rank(sparse(r) for r in mat) == sympy.Matrix(mat).rank()
    assert integer_rank(mat) == sympy.Matrix(mat).rank()


@given(matrices())
def test_rref_matches_sympy(mat):
    pivots, rows = rref(sparse(r) for r in mat)
    ref, piv = sympy.Matrix(mat).rref()
    assert tuple(pivots) == piv
    for i, r in enumerate(rows):
        assert [r.get(j, 0) for j in range(len(mat[0]))] == [Fraction(int(x.p), int(x.q)) for x in ref.row(i)]


@given(matrices())
def test_nullspace_dimension_and_annihilation(mat):
    n = len(mat[0])
    ns = nullspace([sparse(r) for r in mat], n)
    assert len(ns) == n - sympy.Matrix(mat).rank()
    for x in ns:
        for r in mat:
            assert sum(r[j] * x.get(j, 0) for j in range(n)) == 0


@given(matrices())
def test_integer_kernel_is_saturated_lattice_basis(mat):
    n = len(mat[0])
    ker = integer_kernel(mat)
    assert len(ker) == n - sympy.Matrix(mat).rank()
    for u in ker:
        assert all(sum(r[j] * u[j] for j in range(n)) == 0 for r in mat)
    if ker:
        # saturated: the gcd of maximal minors is 1
        K = sympy.Matrix(ker)
        k = len(ker)
        from itertools import combinations

        g = 0
        for cols in combinations(range(n), k):
            g = sympy.gcd(g, K.extract(list(range(k)), list(cols)).det())
        assert g == 1


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse(mat):
    M = sympy.Matrix(mat)
    if M.det() == 0:
        return
    inv = inverse(mat)
    assert sympy.Matrix(inv) == M.inv()


@given(matrices(6, 4))
def test_incremental_basis_decompositions(mat):
    B = IncrementalBasis()
    accepted = []
    for r in mat:
        v = sparse(r)
        idx, combo = B.add(v)
        if idx is None:
            rebuilt = {}
            for k, c in combo.items():
                for j, x in accepted[k].items():
                    rebuilt[j] = rebuilt.get(j, 0) + c * x
            assert {j: x for j, x in rebuilt.items() if x} == v
        else:
            assert idx == len(accepted)
            accepted.append(v)
    assert len(accepted) == sympy.Matrix(mat).rank()
