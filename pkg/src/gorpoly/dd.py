"""Double description method over the integers.

Computes the extreme rays of a pointed cone ``{f : G f >= 0}``.  Rays are
kept as primitive integer vectors, so the iteration is fraction free.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .linalg import dot, primitive, rank, solve_rational


def _independent_rows(G, k):
    chosen = []
    for i in range(len(G)):
        if rank([G[j] for j in chosen] + [G[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    return chosen


def _integral(v: Sequence[Fraction]) -> tuple:
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    return primitive([int(x * den) for x in v])


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def extreme_rays(G: Sequence[Sequence[int]], k: int) -> list[tuple]:
    """Extreme rays of ``{f in R^k : g . f >= 0 for all rows g of G}``.

    ``G`` must have rank ``k`` (the cone is then pointed).  The result is
    sorted lexicographically.
    """
    G = [tuple(g) for g in G]
    S = _independent_rows(G, k)
    if len(S) < k:
        raise ValueError("constraint matrix does not have full column rank; cone is not pointed")
    GS = [G[i] for i in S]
    rays = []
    for i in range(k):
        e = [int(i == j) for j in range(k)]
        sol = solve_rational(GS, e)
        rays.append(_integral(sol))
    zeros = [frozenset(S[j] for j in range(k) if j != i) for i in range(k)]
    processed = set(S)
    for j, g in enumerate(G):
        if j in processed:
            continue
        vals = [dot(g, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zer = [i for i, v in enumerate(vals) if v == 0]
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zer]
        new_zeros = [zeros[i] for i in pos] + [zeros[i] | {j} for i in zer]
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < k - 2:
                    continue
                if any(common <= zeros[o] for o in range(len(rays)) if o != p and o != q):
                    continue
                r = tuple(vals[p] * a - vals[q] * b for a, b in zip(rays[q], rays[p]))
                new_rays.append(primitive(r))
                new_zeros.append(common | {j})
        rays, zeros = new_rays, new_zeros
        processed.add(j)
    return sorted(set(rays))
