"""Branching through an embedding read from JSON.

Any subalgebra can be described by the images of its Chevalley generators.
This demo writes the regular B2 < B3 (roots e1-e2, e2) to a file, reads it
back, checks the Serre relations of the images and branches a few modules.
"""

from __future__ import annotations

import json
import os
import tempfile

from branchrules import branching_slice, build_module, build_root_system, load_embedding
from branchrules.essential import deglex_order


def main():
    g = build_root_system("B", 3)
    # simple-root coordinates of e2-e3 and e3 in B3
    data = {
        "name": "B3:B2",
        "g": {"series": "B", "rank": 3},
        "h": {"series": "B", "rank": 2},
        "regular": True,
        "h_simple": [[0, 1, 0], [0, 0, 1]],
        "generators": {
            "e": [[["e:0,1,0", 1]], [["e:0,0,1", 1]]],
            "f": [[["f:0,1,0", 1]], [["f:0,0,1", 1]]],
            "h": [[["h:2", 1]], [["h:3", 1]]],
        },
    }
    path = os.path.join(tempfile.mkdtemp(), "b2_in_b3.json")
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1)
    emb = load_embedding(g, path)  # raises if the Serre relations fail
    order = deglex_order(g.n_positive)
    for lam in [(1, 0, 0), (0, 0, 1), (0, 1, 0)]:
        M = build_module(g, lam)
        sl = branching_slice(M, emb, order)
        mult = sl.multiplicities()
        parts = " + ".join(f"{mult[w]}x V{w}[{emb.h.weyl_dim(w)}]" if mult[w] > 1 else f"V{w}[{emb.h.weyl_dim(w)}]" for w in sorted(mult))
        print(f"V{lam} [{M.dim}] = {parts}")


if __name__ == "__main__":
    main()
