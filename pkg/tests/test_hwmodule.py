from __future__ import annotations

import pickle
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from _support import module
from branchrules.hwmodule import (
    ModuleTooLarge,
    apply_signature,
    build_module,
    freudenthal_multiplicities,
    freudenthal_multiplicity,
)
from branchrules.pairs import get_pair
from branchrules.rootsys import RootSystemError, build_root_system

ALGEBRAS = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]


def small_weights(g, cap=300, total=3):
    return [w for w in g.dominant_weights_up_to(total) if g.weyl_dim(w) <= cap]


@pytest.mark.parametrize("series,rank", ALGEBRAS)
def test_weight_multiplicities_match_freudenthal(series, rank):
    # module() asserts Freudenthal agreement and the Serre relations
    g = build_root_system(series, rank)
    for w in small_weights(g, total=2):
        M = module(g, w)
        assert M.dim == g.weyl_dim(w)


@pytest.mark.parametrize(
    "series,rank,weight,dim,zero_mult",
    [("A", 1, (3,), 4, 0), ("G", 2, (0, 1), 14, 2), ("G", 2, (1, 0), 7, 1), ("B", 3, (0, 0, 1), 8, 0), ("F", 4, (1, 0, 0, 0), 26, 2)],
)
def test_examples(series, rank, weight, dim, zero_mult):
    g = build_root_system(series, rank)
    M = module(g, weight)
    assert M.dim == dim
    assert M.dims.get((0,) * rank, 0) == zero_mult


def test_freudenthal_single_weight_agrees_with_table():
    g = build_root_system("B", 3)
    table = freudenthal_multiplicities(g, (1, 1, 0))
    assert sum(table.values()) == 105
    for mu, m in list(table.items())[:20]:
        assert freudenthal_multiplicity(g, (1, 1, 0), mu) == m


@pytest.mark.parametrize("series,rank,weight", [("G", 2, (1, 0)), ("B", 3, (0, 0, 1)), ("A", 3, (1, 0, 1)), ("B", 2, (1, 1))])
def test_all_root_brackets(series, rank, weight):
    M = module(build_root_system(series, rank), weight)
    assert M.check_root_brackets() == []


def test_root_brackets_in_reordered_systems():
    for name in ("G2:A2", "B3:G2", "B3:D3"):
        P = get_pair(name)
        M = module(P.g, P.g.fundamental_weight(1))
        assert M.check_root_brackets() == []


def test_adjoint_module_matches_bracket():
    # the adjoint module has every root as a weight
    g = build_root_system("G", 2)
    M = module(g, g.root_to_weight(g.highest_root))
    assert M.dim == 14
    for r in g.positive_roots:
        assert M.has_weight(g.root_to_weight(r))


def test_errors():
    g = build_root_system("B", 3)
    with pytest.raises(RootSystemError):
        build_module(g, (1, -1, 0))
    with pytest.raises(ModuleTooLarge):
        build_module(g, (2, 2, 2), dim_cap=1000)


def test_cache_roundtrip(tmp_path):
    g = build_root_system("G", 2)
    M1 = build_module(g, (1, 1), cache_dir=str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    M2 = build_module(g, (1, 1), cache_dir=str(tmp_path))
    assert M2.dims == M1.dims
    assert M2.check_relations() == []
    assert pickle.loads(pickle.dumps(M1)).dims == M1.dims
    # a different root ordering gets its own cache entry
    build_module(get_pair("G2:A2").g, (1, 1), cache_dir=str(tmp_path))
    assert len(list(tmp_path.iterdir())) == 2


@given(st.integers(0, 5), st.integers(0, 2))
def test_sl3_and_g2_dims(a, b):
    for series in ("A", "G"):
        g = build_root_system(series, 2)
        if g.weyl_dim((a, b)) <= 600:
            assert build_module(g, (a, b)).dim == g.weyl_dim((a, b))


def test_signature_vectors_have_expected_weight():
    from branchrules.essential import Signature

    g = build_root_system("B", 3)
    M = module(g, (0, 1, 0))
    rng = random.Random(1)
    for _ in range(30):
        ex = [rng.randint(0, 1) for _ in range(g.n_positive)]
        s = Signature((0, 1, 0), ex)
        v = apply_signature(M, s)
        if v.coords:
            assert v.weight == s.weight(g)
