from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import module
from branchrules.branching import (
    EmbeddingError,
    branching_slice,
    check_compatibility,
    check_generator_relations,
    functional_residual,
    load_embedding,
    lowest_invariant_functionals,
    make_regular_embedding,
    tilde,
    tilde_fixed_signatures,
)
from branchrules.essential import Signature, essential_signatures
from branchrules.hwmodule import ModuleVector
from branchrules.linalg import rank
from branchrules.pairs import PAIR_NAMES, get_pair
from branchrules.rootsys import build_root_system


def h_highest_counts(M, emb):
    """Multiplicities by brute force: the kernel of all e'_k on each dominant
    h-weight space of the restricted module."""
    groups = {}
    for mu in M.dims:
        groups.setdefault(emb.restrict(mu), []).append(mu)
    out = {}
    for lh, mus in groups.items():
        if any(x < 0 for x in lh):
            continue
        index = [(mu, c) for mu in mus for c in range(M.dims[mu])]
        rows = {}
        for col, (mu, c) in enumerate(index):
            for k in range(emb.h.rank):
                for w, coords in M.apply_element(emb.e[k], ModuleVector(mu, {c: Fraction(1)})).items():
                    for j, x in coords.items():
                        if x:
                            rows.setdefault((k, w, j), {})[col] = x
        m = len(index) - rank(rows.values())
        if m:
            out[lh] = m
    return out


# -- embeddings ----------------------------------------------------------------------


@pytest.mark.parametrize("name", PAIR_NAMES)
def test_generator_relations(name):
    P = get_pair(name)
    M = module(P.g, P.g.fundamental_weight(1))
    assert check_generator_relations(M, P.emb) == []


def test_embedding_json_roundtrip():
    P = get_pair("B3:G2")
    again = load_embedding(P.g, json.dumps(P.emb.to_dict()))
    assert again.restriction == P.emb.restriction
    R = get_pair("A3:A2")
    again = load_embedding(R.g, R.emb.to_dict())
    assert again.regular and set(again.h_roots) == set(R.emb.h_roots)


def test_regular_embedding_from_root_subset():
    g = build_root_system("G", 2)
    long_roots = [r for r in g.positive_roots if g.form(r, r) == 6]
    emb = make_regular_embedding(g, long_roots, "A", 2)
    assert len(emb.h_roots) == 3
    with pytest.raises(EmbeddingError):
        make_regular_embedding(g, [(1, 0), (0, 1)], "A", 2)
    with pytest.raises(EmbeddingError):
        make_regular_embedding(g, [(1, 0), (1, 1), (0, 1)], "A", 2)


def test_bad_embedding_data():
    g = build_root_system("B", 3)
    data = get_pair("B3:G2").emb.to_dict()
    data["generators"]["e"][1] = [["e:1,0,0", "1"]]
    with pytest.raises(EmbeddingError):
        load_embedding(g, data)


# -- slices --------------------------------------------------------------------------


def rows(sl):
    return sorted((e.signature.exps, e.h_weight) for e in sl.entries)


def test_g2_a2_slices():
    P = get_pair("G2:A2")
    s1 = branching_slice(module(P.g, (1, 0)), P.emb, P.order)
    assert rows(s1) == sorted([((0, 0, 0, 0, 0, 1), (1, 0)), ((0,) * 6, (0, 1)), ((0, 0, 1, 0, 0, 0), (0, 0))])
    s2 = branching_slice(module(P.g, (0, 1)), P.emb, P.order)
    assert rows(s2) == sorted([((0,) * 6, (1, 1)), ((0, 0, 1, 0, 0, 0), (1, 0)), ((0, 0, 0, 1, 0, 0), (0, 1))])
    assert branching_slice(module(P.g, (0, 0)), P.emb, P.order).signatures == [Signature((0, 0), (0,) * 6)]


def test_b3_g2_first_fundamental_is_irreducible():
    P = get_pair("B3:G2")
    sl = branching_slice(module(P.g, (1, 0, 0)), P.emb, P.order)
    assert [e.h_weight for e in sl.entries] == [(1, 0)]


def test_functionals_are_lowest_and_dual():
    P = get_pair("B3:G2")
    M = module(P.g, (0, 1, 0))
    for grp in lowest_invariant_functionals(M, P.emb):
        for fn in grp.functionals:
            assert functional_residual(M, P.emb, fn) == 0
    sl = branching_slice(M, P.emb, P.order)
    for e in sl.entries:
        assert functional_residual(M, P.emb, e.functional) == 0


@pytest.mark.parametrize(
    "name,weight",
    [("F4:B4", (1, 0, 0, 0)), ("F4:B4", (0, 0, 0, 1)), ("F4:B4", (0, 0, 1, 0)), ("B3:D3", (0, 1, 1)), ("B3:D3", (1, 0, 1)), ("B2:D2", (1, 2))],
)
def test_tilde_route_agrees_with_direct_route(name, weight):
    P = get_pair(name)
    M = module(P.g, weight)
    d = branching_slice(M, P.emb, P.order)
    t = branching_slice(M, P.emb, P.order, route="tilde")
    assert rows(d) == rows(t)


def test_a3_a2_interlacing():
    P = get_pair("A3:A2")
    M = module(P.g, (1, 1, 0))
    assert M.dim == 20
    sl = branching_slice(M, P.emb, P.order)
    mult = sl.multiplicities()
    assert set(mult.values()) == {1}
    assert sum(P.emb.h.weyl_dim(w) for w in mult) == 20
    assert mult == h_highest_counts(M, P.emb)
    # partitions: lam = (2,1,0,0); mu interlaces lam
    lam = (2, 1, 0, 0)
    for a, b in mult:
        mu = (a + b, b, 0)
        assert all(lam[i] >= mu[i] >= lam[i + 1] for i in range(3))
    assert len(mult) == 4


# -- compatibility -------------------------------------------------------------------


@pytest.mark.parametrize("name", ["B2:D2", "B3:D3", "F4:B4"])
def test_compatibility_of_shipped_regular_pairs(name):
    P = get_pair(name)
    rep = check_compatibility(P.emb, P.order, max_degree=2, random_pairs=500)
    assert rep.ok, rep.counterexample


@pytest.mark.parametrize("name", ["B2:D2", "B3:D3"])
def test_tilde_fixed_essential_signatures_form_the_slice(name):
    P = get_pair(name)
    rep = check_compatibility(P.emb, P.order, max_degree=2, random_pairs=500)
    for i in range(1, P.g.rank + 1):
        M = module(P.g, P.g.fundamental_weight(i))
        B = essential_signatures(M, P.order)
        assert tilde_fixed_signatures(B, P.emb, rep) == set(branching_slice(M, P.emb, P.order).signatures)


def test_incompatible_numbering_is_refused():
    # plain deglex with height-ordered roots: the h-roots are not all first
    assert not check_compatibility(get_pair("A3:A2").emb, get_pair("A3:A2").order).ok
    # the long roots of G2 do not come first in the shipped numbering
    P = get_pair("G2:A2")
    rep = check_compatibility(P.emb, P.order)
    assert not rep.roots_first
    B = essential_signatures(module(P.g, (1, 0)), P.order)
    with pytest.raises(EmbeddingError):
        tilde_fixed_signatures(B, P.emb, rep)
    with pytest.raises(EmbeddingError):
        tilde(B.signatures[0], get_pair("B3:G2").emb)


# -- dimension conservation ----------------------------------------------------------

CAPS = {"F4:B4": 1300, "B3:G2": 400, "B3:D3": 400, "G2:A2": 400, "B2:D2": 400, "A2:A1": 400, "A3:A2": 400}
PAIRS = {n: get_pair(n) for n in PAIR_NAMES}


def _weights(name):
    g = PAIRS[name].g
    return [w for w in g.dominant_weights_up_to(6) if g.weyl_dim(w) <= CAPS[name]]


@pytest.mark.parametrize("name", PAIR_NAMES)
@given(data=st.data())
@settings(max_examples=25)
def test_dimension_conservation(name, data):
    P = PAIRS[name]
    lam = data.draw(st.sampled_from(_weights(name)))
    M = module(P.g, lam)
    sl = branching_slice(M, P.emb, P.order)
    assert sum(P.emb.h.weyl_dim(e.h_weight) for e in sl.entries) == M.dim
    if M.dim <= 400:
        assert sl.multiplicities() == h_highest_counts(M, P.emb)
