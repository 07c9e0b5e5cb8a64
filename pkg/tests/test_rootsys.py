from __future__ import annotations

import pytest
import sympy
from sympy.liealgebras.cartan_matrix import CartanMatrix

from branchrules.rootsys import (
    RootSystemError,
    build_root_system,
    expected_positive_count,
    root_system_from_json,
    weyl_dim_product,
)

TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4), ("C", 3), ("D", 3), ("D", 4), ("D", 5), ("G", 2), ("F", 4), ("E", 6)]
DETERMINANT = {"A": lambda n: n + 1, "B": lambda n: 2, "C": lambda n: 2, "D": lambda n: 4, "E": lambda n: 9 - n, "F": lambda n: 1, "G": lambda n: 1}


@pytest.mark.parametrize("series,rank", TYPES)
def test_positive_roots_and_cartan(series, rank):
    g = build_root_system(series, rank)
    assert g.n_positive == expected_positive_count(series, rank)
    assert len(g.roots) == 2 * g.n_positive
    assert sympy.Matrix(g.cartan).det() == DETERMINANT[series](rank)
    assert all(g.cartan[i][i] == 2 for i in range(rank))


@pytest.mark.parametrize("series,rank", [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("E", 6)])
def test_cartan_matches_sympy(series, rank):
    M = CartanMatrix(f"{series}{rank}")
    assert [list(M.row(i)) for i in range(rank)] == build_root_system(series, rank).cartan


def test_f4_numbering_is_reversed_standard():
    # simple roots are numbered from the short end
    M = CartanMatrix("F4")
    g = build_root_system("F", 4)
    assert [[M[3 - i, 3 - j] for j in range(4)] for i in range(4)] == g.cartan
    assert g.form(g.simple_roots[0], g.simple_roots[0]) < g.form(g.simple_roots[3], g.simple_roots[3])


@pytest.mark.parametrize("series,rank", TYPES)
def test_adjoint_dimension(series, rank):
    g = build_root_system(series, rank)
    theta = g.root_to_weight(g.highest_root)
    assert g.weyl_dim(theta) == len(g.roots) + rank
    assert weyl_dim_product(g, theta) == len(g.roots) + rank


@pytest.mark.parametrize(
    "series,rank,weight,dim",
    [
        ("A", 1, (3,), 4),
        ("G", 2, (1, 0), 7),
        ("G", 2, (0, 1), 14),
        ("B", 3, (0, 0, 1), 8),
        ("B", 3, (1, 0, 0), 7),
        ("F", 4, (1, 0, 0, 0), 26),
        ("F", 4, (0, 0, 0, 1), 52),
        ("E", 6, (1, 0, 0, 0, 0, 0), 27),
    ],
)
def test_known_dimensions(series, rank, weight, dim):
    assert build_root_system(series, rank).weyl_dim(weight) == dim


@pytest.mark.parametrize("series,rank", [("A", 2), ("B", 2), ("G", 2), ("B", 3)])
def test_weyl_polynomial(series, rank):
    g = build_root_system(series, rank)
    P = g.weyl_dim_polynomial()
    assert P.total_degree() == g.n_positive
    for w in g.dominant_weights_up_to(3):
        assert P.eval(dict(zip(P.gens, w))) == g.weyl_dim(w) == weyl_dim_product(g, w)


@pytest.mark.parametrize("series,rank", [("A", 2), ("B", 2), ("G", 2), ("B", 3), ("C", 3), ("A", 3)])
def test_structure_constants_satisfy_jacobi(series, rank):
    g = build_root_system(series, rank)
    assert g.check_jacobi() == []
    for (a, b), n in g.structure_constants.items():
        assert n == -g.structure_constants[(b, a)]


def test_ordering_roundtrip_and_errors():
    g = build_root_system("G", 2, [(3, 2), (3, 1), (2, 1), (1, 1), (0, 1), (1, 0)])
    assert root_system_from_json(g.to_json()).positive_roots == g.positive_roots
    with pytest.raises(RootSystemError):
        build_root_system("G", 2, [(1, 0), (0, 1)])
    with pytest.raises(RootSystemError):
        build_root_system("G", 3)
    with pytest.raises(RootSystemError):
        g.weyl_dim((1, -1))


def test_ambient_roundtrip():
    g = build_root_system("B", 3)
    for r in g.positive_roots:
        assert g.ambient_to_root(g.root_to_ambient(r)) == r
    for w in g.dominant_weights_up_to(2):
        assert g.ambient_to_weight(g.weight_to_ambient(w)) == w
