"""The F4 > B4 branching data should not depend on how the sixteen B4 roots
are numbered, nor on the tie-break that completes the order."""

from __future__ import annotations

import random

import pytest

from branchrules.branching import branching_slice
from branchrules.hwmodule import build_module
from branchrules.pairs import f4_b4

WEIGHTS = [(1, 0, 0, 0), (0, 0, 0, 1), (0, 1, 0, 0), (0, 0, 1, 0)]


def projected_slice(P, lam):
    sl = branching_slice(build_module(P.g, lam), P.emb, P.order)
    out = set()
    for e in sl.entries:
        # exponents on the B4 roots vanish for every slice signature
        assert not any(e.signature.exps[:16])
        out.add((e.signature.exps[16:], e.h_weight))
    return out


@pytest.fixture(scope="module")
def reference():
    P = f4_b4()
    return {lam: projected_slice(P, lam) for lam in WEIGHTS}


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_slices_invariant_under_b4_root_permutation(reference, seed):
    perm = list(range(16))
    random.Random(seed).shuffle(perm)
    P = f4_b4(perm)
    for lam in WEIGHTS:
        assert projected_slice(P, lam) == reference[lam]


def test_slices_invariant_under_tie_break(reference):
    P = f4_b4(tie_break="deg-revlex")
    for lam in WEIGHTS:
        assert projected_slice(P, lam) == reference[lam]


def test_bad_arguments():
    with pytest.raises(ValueError):
        f4_b4([0] * 16)
    with pytest.raises(ValueError):
        f4_b4(tie_break="lex")
