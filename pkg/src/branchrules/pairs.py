"""Built-in pairs g > h with their root numberings and monomial orders.

Names: ``G2:A2``, ``B3:G2``, ``F4:B4``, ``Bn:Dn`` (e.g. ``B3:D3``) and
``An:An-1`` (e.g. ``A3:A2``).
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .branching import Embedding, load_embedding, make_regular_embedding
from .essential import (
    MonomialOrderSpec,
    OrderStage,
    block_cascade_order,
    deglex_order,
    degree_revlex_order,
)
from .rootsys import RootSystem, build_root_system, ordering_from_ambient

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
HALF = Fraction(1, 2)


@dataclass
class PairSpec:
    name: str
    g: RootSystem
    emb: Embedding
    order: MonomialOrderSpec


def _eps(n, *terms):
    v = [Fraction(0)] * n
    for c, i in terms:
        v[i - 1] += c
    return tuple(v)


def bn_root_vectors(n: int) -> List[Tuple[Fraction, ...]]:
    """Positive roots of B_n: for j = 2..n the roots eps_i - eps_j (i < j), then
    eps_i + eps_j (i < j); finally eps_1, ..., eps_n."""
    out = []
    for j in range(2, n + 1):
        out += [_eps(n, (1, i), (-1, j)) for i in range(1, j)]
        out += [_eps(n, (1, i), (1, j)) for i in range(1, j)]
    out += [_eps(n, (1, i)) for i in range(1, n + 1)]
    return out


def bn_cascade_blocks(n: int) -> List[List[int]]:
    """Index blocks of the B_n cascade: short roots, then eps_i + eps_j and
    eps_i - eps_j for j = n down to 2."""
    vecs = bn_root_vectors(n)
    pos = {v: k for k, v in enumerate(vecs)}
    blocks = [[pos[_eps(n, (1, i))] for i in range(1, n + 1)]]
    for j in range(n, 1, -1):
        blocks.append([pos[_eps(n, (1, i), (1, j))] for i in range(1, j)])
        blocks.append([pos[_eps(n, (1, i), (-1, j))] for i in range(1, j)])
    return blocks


def g2_root_order() -> List[Tuple[int, int]]:
    # beta_1 short: 3b1+2b2, 3b1+b2, 2b1+b2, b1+b2, b2, b1
    return [(3, 2), (3, 1), (2, 1), (1, 1), (0, 1), (1, 0)]


def b3_g2_root_vectors() -> List[Tuple[Fraction, ...]]:
    e = lambda *t: _eps(3, *t)  # noqa: E731
    return [
        e((1, 1), (1, 2)), e((1, 1), (1, 3)), e((1, 2), (1, 3)),
        e((1, 1)), e((1, 3)), e((1, 2)),
        e((1, 1), (-1, 3)), e((1, 2), (-1, 3)), e((1, 1), (-1, 2)),
    ]


def f4_root_vectors() -> List[Tuple[Fraction, ...]]:
    """B_4 roots first (B_n numbering), then the eight roots (eps_1 +- ...)/2."""
    half = [
        (1, 1, 1, 1), (1, 1, 1, -1), (1, 1, -1, -1), (1, 1, -1, 1),
        (1, -1, 1, -1), (1, -1, 1, 1), (1, -1, -1, 1), (1, -1, -1, -1),
    ]
    return bn_root_vectors(4) + [tuple(HALF * x for x in s) for s in half]


TIE_BREAKS = ("deglex", "deg-revlex")


def f4_q_order(n_roots: int = 24, tie_break: str = "deglex") -> MonomialOrderSpec:
    """Lexicographic on q_i = p_17 + ... + p_{25-i} (i = 1..8), then deglex.

    ``tie_break="deg-revlex"`` breaks ties by degree and reverse
    lexicographic order instead; the result is used to check that the
    presentation does not depend on that choice.
    """
    stages = [OrderStage("prefix_sums", tuple(range(16, 24)))]
    if tie_break == "deg-revlex":
        everything = tuple(range(n_roots))
        stages += [OrderStage("degree", everything), OrderStage("lex", everything, reverse=True)]
    elif tie_break != "deglex":
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}")
    name = "f4-b4" if tie_break == "deglex" else f"f4-b4/{tie_break}"
    return MonomialOrderSpec(name, n_roots, tuple(stages))


def g2_a2() -> PairSpec:
    g = build_root_system("G", 2, g2_root_order())
    emb = make_regular_embedding(g, [(0, 1), (3, 1)], "A", 2, name="G2:A2")
    return PairSpec("G2:A2", g, emb, deglex_order(6, "g2-default"))


def b3_g2() -> PairSpec:
    g = build_root_system("B", 3, ordering_from_ambient("B", 3, b3_g2_root_vectors()))
    emb = load_embedding(g, os.path.join(DATA_DIR, "g2_in_b3.json"))
    emb.name = "B3:G2"
    return PairSpec("B3:G2", g, emb, degree_revlex_order(9, "b3-g2"))


def f4_b4(b4_permutation: Optional[Sequence[int]] = None, tie_break: str = "deglex") -> PairSpec:
    """F4 > B4.  ``b4_permutation`` reorders the sixteen B4 roots (positions
    0..15); the eight remaining roots keep their places."""
    vecs = f4_root_vectors()
    if b4_permutation is not None:
        if sorted(b4_permutation) != list(range(16)):
            raise ValueError("b4_permutation must be a permutation of range(16)")
        vecs = [vecs[i] for i in b4_permutation] + vecs[16:]
    g = build_root_system("F", 4, ordering_from_ambient("F", 4, vecs))
    simple = [g.ambient_to_root(v) for v in (_eps(4, (1, 1), (-1, 2)), _eps(4, (1, 2), (-1, 3)), _eps(4, (1, 3), (-1, 4)), _eps(4, (1, 4)))]
    emb = make_regular_embedding(g, simple, "B", 4, name="F4:B4")
    return PairSpec("F4:B4", g, emb, f4_q_order(tie_break=tie_break))


def bn_dn_order(n: int) -> MonomialOrderSpec:
    return block_cascade_order(n * n, bn_cascade_blocks(n), f"bn-dn({n})")


def bn_dn(n: int) -> PairSpec:
    if n < 2:
        raise ValueError("B_n > D_n needs n >= 2")
    g = build_root_system("B", n, ordering_from_ambient("B", n, bn_root_vectors(n)))
    simple = [_eps(n, (1, i), (-1, i + 1)) for i in range(1, n)] + [_eps(n, (1, n - 1), (1, n))]
    emb = make_regular_embedding(g, [g.ambient_to_root(v) for v in simple], "D", n, name=f"B{n}:D{n}")
    return PairSpec(f"B{n}:D{n}", g, emb, bn_dn_order(n))


def an_an1(n: int) -> PairSpec:
    if n < 2:
        raise ValueError("A_n > A_{n-1} needs n >= 2")
    g = build_root_system("A", n)
    simple = [tuple(int(i == k) for i in range(n)) for k in range(n - 1)]
    emb = make_regular_embedding(g, simple, "A", n - 1, name=f"A{n}:A{n-1}")
    return PairSpec(f"A{n}:A{n-1}", g, emb, deglex_order(g.n_positive))


def get_pair(name: str) -> PairSpec:
    key = name.replace(" ", "").upper()
    if key == "G2:A2":
        return g2_a2()
    if key == "B3:G2":
        return b3_g2()
    if key == "F4:B4":
        return f4_b4()
    m = re.fullmatch(r"B(\d+):D(\d+)", key)
    if m and m.group(1) == m.group(2):
        return bn_dn(int(m.group(1)))
    m = re.fullmatch(r"A(\d+):A(\d+)", key)
    if m and int(m.group(2)) == int(m.group(1)) - 1:
        return an_an1(int(m.group(1)))
    raise KeyError(f"unknown pair {name!r}")


def builtin_order(name: str, g: RootSystem) -> MonomialOrderSpec:
    """Named orders: deglex, g2-default, b3-g2, bn-dn, f4-b4."""
    N = g.n_positive
    if name in ("deglex", "g2-default"):
        return deglex_order(N, name)
    if name in ("b3-g2", "deg-revlex"):
        return degree_revlex_order(N, name)
    if name == "bn-dn" and g.series == "B":
        return bn_dn_order(g.rank)
    if name == "f4-b4" and g.series == "F":
        return f4_q_order(N)
    raise KeyError(f"unknown order {name!r} for {g.name()}")


PAIR_NAMES = ["G2:A2", "B3:G2", "F4:B4", "B2:D2", "B3:D3", "A2:A1", "A3:A2"]
