"""B3 restricted to G2: the fundamental slices are not enough.

The five signatures coming from the fundamental modules generate a semigroup
whose dimension count falls short at pi1+pi2 and pi1+pi3.  Taking the slices
of those two modules supplies the two missing generators, after which the
count agrees with the Weyl dimension everywhere on the test simplex.
"""

from __future__ import annotations

from branchrules import certify, compute_relations, discover_generators, get_pair
from branchrules.semigroup import GeneratorSet, d_of_lambda


def main():
    P = get_pair("B3:G2")
    res = discover_generators(P.emb, P.order, iteration_cap=1)
    fund = res.generators
    print(f"{len(fund)} generators from the fundamental modules:")
    for s, w in zip(fund.signatures, fund.h_weights):
        print(f"  {s} -> {w}")
    rep = certify(fund, 2)
    print(f"\ncertificate on weights of degree <= 2: {rep.verdict}")
    for lam in rep.failing:
        print(f"  d{lam} = {d_of_lambda(fund, lam)} but dim V{lam} = {P.g.weyl_dim(lam)}")

    res = discover_generators(P.emb, P.order)
    gens = res.generators
    print(f"\nafter discovery: {len(gens)} generators, {res.status} (k = {res.report.degree_bound})")
    for s, w in zip(gens.signatures[len(fund):], gens.h_weights[len(fund):]):
        print(f"  new: {s} -> {w}")
    pres = compute_relations(gens)
    print("relation:", "; ".join(pres.relation_strings()))


if __name__ == "__main__":
    main()
