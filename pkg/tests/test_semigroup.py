from __future__ import annotations

from math import comb

import pytest

from _support import module
from branchrules.essential import Signature
from branchrules.golden import golden_table
from branchrules.pairs import get_pair
from branchrules.semigroup import (
    BUDGET,
    CERTIFIED,
    COUNTEREXAMPLE,
    GeneratorSet,
    certify,
    compute_relations,
    d_of_lambda,
    discover_generators,
    enumerate_elements,
    multiplicity,
    simplex_points,
)
from test_branching import h_highest_counts


def test_simplex_points():
    pts = simplex_points(3, 4)
    assert len(pts) == comb(4 + 3, 3)
    assert all(sum(p) <= 4 for p in pts) and len(set(pts)) == len(pts)


def test_negative_control_b3_g2():
    T = golden_table("b3-g2")
    P = T.pair
    fund = GeneratorSet(P.g, P.emb.h, T.signatures[:5], T.h_weights[:5], P.emb)
    rep = certify(fund, 2)
    assert rep.verdict == COUNTEREXAMPLE
    assert sorted(rep.failing) == [(1, 0, 1), (1, 1, 0)]
    full = certify(fund)
    least = min(sum(w) for w in full.failing)
    assert sorted(w for w in full.failing if sum(w) == least) == [(1, 0, 1), (1, 1, 0)]
    # every failure sits above one of the two
    for w in full.failing:
        assert w[0] >= 1 and (w[1] >= 1 or w[2] >= 1)
    # the two missing generators repair the count
    assert certify(T.generator_set()).verdict == CERTIFIED


def test_d_of_lambda_counts_restrictions():
    T = golden_table("g2-a2")
    gens = T.generator_set()
    for lam in [(1, 0), (0, 1), (2, 0), (1, 1)]:
        assert d_of_lambda(gens, lam) == T.pair.g.weyl_dim(lam)


@pytest.mark.parametrize("lam", [(2, 0), (1, 1), (0, 2)])
def test_generated_multiplicities_match_brute_force(lam):
    T = golden_table("g2-a2")
    P = T.pair
    gens = T.generator_set()
    brute = h_highest_counts(module(P.g, lam), P.emb)
    for lh, m in brute.items():
        assert multiplicity(gens, lam, lh) == m
    assert sum(brute.values()) == len(enumerate_elements(gens, lam))


def test_b3_g2_multiplicities_at_a_mixed_weight():
    T = golden_table("b3-g2")
    P = T.pair
    gens = T.generator_set()
    lam = (1, 1, 0)
    brute = h_highest_counts(module(P.g, lam), P.emb)
    for lh, m in brute.items():
        assert multiplicity(gens, lam, lh) == m


def test_discovery_results():
    P = get_pair("G2:A2")
    res = discover_generators(P.emb, P.order)
    assert res.status == CERTIFIED and len(res.generators) == 6
    assert res.iterations == 1
    P = get_pair("B3:G2")
    res = discover_generators(P.emb, P.order)
    assert res.status == CERTIFIED and len(res.generators) == 7
    assert sorted(res.processed[3:]) == [(1, 0, 1), (1, 1, 0)]


def test_iteration_cap():
    P = get_pair("B3:G2")
    res = discover_generators(P.emb, P.order, iteration_cap=1)
    assert res.status == BUDGET
    assert res.report.verdict == COUNTEREXAMPLE


def test_element_budget():
    T = golden_table("b3-g2")
    gens = T.generator_set()
    gens.element_budget = 5
    assert certify(gens, 3).verdict == BUDGET


def test_threads_do_not_change_results():
    P = get_pair("B3:G2")
    a = discover_generators(P.emb, P.order)
    b = discover_generators(P.emb, P.order, threads=2)
    assert a.generators.signatures == b.generators.signatures
    assert a.generators.h_weights == b.generators.h_weights


def test_presentation_output():
    T = golden_table("g2-a2")
    pres = compute_relations(T.generator_set())
    assert pres.relation_strings() == ["s2 + s5 = s3 + s4"]
    assert pres.machine_lines() == ["REL 0,1,0,0,1,0 = 0,0,1,1,0,0"]
    assert pres.text().startswith("1. ")


def test_generator_set_validation():
    P = get_pair("G2:A2")
    s = Signature((1, 0), (0,) * 6)
    with pytest.raises(ValueError):
        GeneratorSet(P.g, P.emb.h, [s, s], [(0, 1), (0, 1)], P.emb)
    with pytest.raises(ValueError):
        GeneratorSet(P.g, P.emb.h, [Signature((0, 0), (1, 0, 0, 0, 0, 0))], [(0, 0)], P.emb)
    gens = GeneratorSet.from_signatures(P.emb, [s])
    assert gens.h_weights == [(0, 1)]


@pytest.mark.parametrize("n", [2, 3])
def test_bn_dn_and_an_an1_are_free(n):
    for name in (f"B{n}:D{n}", f"A{n}:A{n-1}"):
        P = get_pair(name)
        res = discover_generators(P.emb, P.order)
        assert res.status == CERTIFIED
        assert len(res.generators) == 2 * n
        assert compute_relations(res.generators).relations == []
