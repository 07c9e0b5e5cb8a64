from __future__ import annotations

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from branchrules.toric import (
    GroebnerBudgetExceeded,
    buchberger,
    is_toric_relation,
    lex_key,
    reduce_basis,
    toric_ideal,
    weighted_revlex_key,
)


def as_pairs(polys, xs):
    out = set()
    for p in polys:
        terms = sympy.Poly(p, *xs).terms()
        assert len(terms) == 2
        (m1, c1), (m2, c2) = terms
        assert {c1, c2} == {1, -1}
        out.add((m1, m2) if c1 == 1 else (m2, m1))
    return out


def sympy_toric(points):
    n, d = len(points), len(points[0])
    ts = sympy.symbols(f"t0:{d}")
    xs = sympy.symbols(f"x0:{n}")
    gens = [xs[j] - sympy.Mul(*[ts[i] ** points[j][i] for i in range(d)]) for j in range(n)]
    G = sympy.groebner(gens, *ts, *xs, order="lex")
    elim = [p for p in G.exprs if not (p.free_symbols & set(ts))]
    return as_pairs(elim, xs)


def test_twisted_cubic():
    pts = [(3, 0), (2, 1), (1, 2), (0, 3)]
    gb = toric_ideal(pts, [3, 3, 3, 3])
    assert set(gb) == {((1, 0, 1, 0), (0, 2, 0, 0)), ((1, 0, 0, 1), (0, 1, 1, 0)), ((0, 1, 0, 1), (0, 0, 2, 0))}
    assert all(is_toric_relation(pts, b) for b in gb)


def test_free_configuration_has_no_relations():
    assert toric_ideal([(1, 0, 0), (1, 1, 0), (1, 0, 1)], [1, 1, 1]) == []


point_sets = st.integers(3, 5).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), min_size=n, max_size=n, unique=True)
)


@given(point_sets)
@settings(max_examples=30)
def test_toric_ideal_matches_sympy_elimination(raw):
    pts = [(1,) + p for p in raw]  # homogenizing coordinate
    ours = toric_ideal(pts, [1] * len(pts), lex_key)
    assert set(ours) == sympy_toric(pts)


binomials = st.integers(3, 4).flatmap(
    lambda n: st.lists(
        st.tuples(
            st.lists(st.integers(0, 2), min_size=n, max_size=n),
            st.lists(st.integers(0, 2), min_size=n, max_size=n),
        ).filter(lambda t: sum(t[0]) == sum(t[1]) and t[0] != t[1]),
        min_size=1,
        max_size=3,
    )
)


@given(binomials)
@settings(max_examples=40)
def test_buchberger_matches_sympy_grevlex(raw):
    n = len(raw[0][0])
    xs = sympy.symbols(f"x0:{n}")
    gens = [(tuple(a), tuple(b)) for a, b in raw]
    key = weighted_revlex_key([1] * n, n - 1)
    ours = reduce_basis(buchberger(gens, key), key)
    polys = [sympy.Mul(*[x**e for x, e in zip(xs, a)]) - sympy.Mul(*[x**e for x, e in zip(xs, b)]) for a, b in gens]
    G = sympy.groebner(polys, *xs, order="grevlex")
    assert set(ours) == as_pairs(G.exprs, xs)


def test_pair_budget():
    pts = [(1, a, b) for a in range(3) for b in range(3)]
    try:
        toric_ideal(pts, [1] * len(pts), pair_budget=3)
    except GroebnerBudgetExceeded:
        return
    raise AssertionError("budget not enforced")
