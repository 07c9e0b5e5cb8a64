"""G2 restricted to its long-root A2, step by step.

Builds the two fundamental modules, lists their essential signatures, takes
the branching slices, grows a generator set until the dimension certificate
holds and prints the single relation among the generators.
"""

from __future__ import annotations

from branchrules import branching_slice, build_module, compute_relations, discover_generators, essential_signatures, get_pair
from branchrules.golden import reference_numbering
from branchrules.semigroup import GeneratorSet


def main():
    P = get_pair("G2:A2")
    g, emb, order = P.g, P.emb, P.order
    print("positive roots of G2 (simple-root coordinates):")
    for k, r in enumerate(g.positive_roots, 1):
        mark = "  (in A2)" if r in emb.h_roots else ""
        print(f"  alpha_{k} = {r}{mark}")

    for lam in [(1, 0), (0, 1)]:
        M = build_module(g, lam)
        B = essential_signatures(M, order)
        print(f"\nV{lam}: dim {M.dim}, {len(B)} essential signatures")
        for s in B.signatures:
            print(f"  {s}")
        sl = branching_slice(M, emb, order)
        print("  branching slice (signature -> A2 highest weight):")
        for e in sl.entries:
            print(f"    {e.signature} -> {e.h_weight}  dim {emb.h.weyl_dim(e.h_weight)}")

    res = discover_generators(emb, order, progress=lambda m: print("  " + m))
    print(f"\ndiscovery: {res.status} after {res.iterations} round(s)")
    gens = res.generators
    perm = reference_numbering(P.name, gens.signatures)
    gens = GeneratorSet(g, emb.h, [gens.signatures[i] for i in perm], [gens.h_weights[i] for i in perm], emb)
    pres = compute_relations(gens)
    for i, (s, w) in enumerate(zip(gens.signatures, gens.h_weights), 1):
        print(f"  s{i} = {s} -> {w}")
    print("relations:")
    print(pres.text())


if __name__ == "__main__":
    main()
