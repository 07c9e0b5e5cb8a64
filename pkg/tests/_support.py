"""Shared module cache for the test-suite.

Every module built through ``module()`` is checked once for the Serre and
commutation relations and, when small, against Freudenthal's formula.
"""

from __future__ import annotations

from branchrules.hwmodule import build_module, freudenthal_multiplicities

FREUDENTHAL_CAP = 300
RELATION_CHECK_CAP = 3000

_CACHE = {}
CHECKED = []


def module(g, lam, dim_cap=20000):
    lam = tuple(lam)
    key = (g.series, g.rank, g.ordering_hash(), lam)
    M = _CACHE.get(key)
    if M is None:
        M = build_module(g, lam, dim_cap=dim_cap)
        if M.dim <= RELATION_CHECK_CAP:
            bad = M.check_relations()
            assert not bad, f"{g.name()} {lam}: {bad[:3]}"
        if M.dim <= FREUDENTHAL_CAP:
            assert freudenthal_multiplicities(g, lam) == M.dims, f"{g.name()} {lam}"
        CHECKED.append((g.name(), lam, M.dim))
        _CACHE[key] = M
    return M
