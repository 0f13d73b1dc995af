"""Independent reference checks for the tests.

Nothing here imports the solvers. Everything works straight from the
definitions on plain lists.
"""
from __future__ import annotations

from itertools import product


def bundles(owner, n):
    out = [[] for _ in range(n)]
    for x, a in enumerate(owner):
        out[a].append(x)
    return out


def naive_efx(values, owner, n):
    """EFx by definition: drop every single item from every other bundle."""
    bs = bundles(owner, n)
    worth = [sum(values[x] for x in b) for b in bs]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for x in bs[j]:
                if worth[i] < worth[j] - values[x]:
                    return False
    return True


def naive_cost(values, owner, n, costs=None, alphas=None):
    if costs is not None:
        return sum(costs[a][x] for x, a in enumerate(owner))
    worth = [0] * n
    for x, a in enumerate(owner):
        worth[a] += values[x]
    return sum(al * w for al, w in zip(alphas, worth))


def naive_optimum(values, n, costs=None, alphas=None):
    """(cost, owner) of the cheapest EFx allocation, lexicographically first on ties."""
    best = None
    for owner in product(range(n), repeat=len(values)):
        if naive_efx(values, owner, n):
            c = naive_cost(values, owner, n, costs, alphas)
            if best is None or c < best[0]:
                best = (c, owner)
    return best


def equal_sum_split(S, equal_size=False):
    """Sign-vector enumeration: is there a +/- assignment summing to zero?"""
    for signs in product((1, -1), repeat=len(S)):
        if sum(s * v for s, v in zip(signs, S)) == 0:
            if not equal_size or signs.count(1) == signs.count(-1):
                return True
    return False


def fits_bins(sizes, B, bins):
    """Try every assignment of sizes to bins."""
    for assign in product(range(bins), repeat=len(sizes)):
        loads = [0] * bins
        for s, b in zip(sizes, assign):
            loads[b] += s
        if max(loads) <= B:
            return True
    return False
