"""Exact solver for the case of at least as many agents as items, all positive.

With ``n >= m`` and every item positively valued, an EFx allocation gives
each item to a different agent, so the problem is a minimum-cost matching of
the items into the agents. Each item only needs its ``m`` cheapest agents:
at most ``m - 1`` of them can be taken by other items.
"""
from __future__ import annotations

import time

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InternalInconsistency, PreconditionError
from .fairness import efx_witness
from .model import Allocation, Instance, SolveResult, allocation_cost

_EXACT = 2**53


def cheapest_agents(instance: Instance, item: int, k: int) -> list[int]:
    """The ``k`` cheapest agents for ``item``; ties go to the lower index."""
    return sorted(range(instance.n), key=lambda a: (instance.item_cost(a, item), a))[:k]


def _assign(matrix: np.ndarray):
    try:
        rows, cols = linear_sum_assignment(matrix)
    except ValueError:
        return None
    if not np.all(np.isfinite(matrix[rows, cols])):
        return None
    return cols


def solve_singleton_matching(instance: Instance, prune: bool = True) -> SolveResult:
    """Minimum-cost EFx allocation when every item must sit alone.

    Among optimal matchings the one whose owner sequence (by item index) is
    lexicographically smallest is returned.

    Args:
        prune: keep only each item's ``m`` cheapest agents as candidates.

    Raises:
        PreconditionError: ``n < m``, a zero-value item, or costs too large
            for exact floating-point matching.
    """
    t0 = time.perf_counter()
    n, m = instance.n, instance.m
    if n < m:
        raise PreconditionError(f"matching needs n >= m, got n={n}, m={m}")
    if any(v == 0 for v in instance.values):
        raise PreconditionError("matching needs every item value to be positive")
    if m == 0:
        return SolveResult(Allocation(()), 0, "matching", {"edges": 0, "wall_us": 0})
    if instance.cost_model.max_entry() * max(instance.values) * m >= _EXACT:
        raise PreconditionError("costs too large for exact matching")

    if prune:
        cands = [cheapest_agents(instance, x, m) for x in range(m)]
    else:
        cands = [list(range(n)) for _ in range(m)]
    agents = sorted({a for c in cands for a in c})
    col = {a: k for k, a in enumerate(agents)}
    matrix = np.full((m, len(agents)), np.inf)
    for x, c in enumerate(cands):
        for a in c:
            matrix[x, col[a]] = instance.item_cost(a, x)

    cols = _assign(matrix)
    if cols is None:
        raise InternalInconsistency("no perfect matching of the items")
    best = int(matrix[np.arange(m), cols].sum())

    # fix items in index order to their smallest agent that keeps the optimum
    solves = 1
    for x in range(m):
        for a in sorted(cands[x]):
            if matrix[x, col[a]] == np.inf:
                continue
            trial = matrix.copy()
            trial[x, :] = np.inf
            trial[:, col[a]] = np.inf
            trial[x, col[a]] = matrix[x, col[a]]
            got = _assign(trial)
            solves += 1
            if got is not None and int(trial[np.arange(m), got].sum()) == best:
                matrix = trial
                break
        else:
            raise InternalInconsistency(f"lost the optimum while fixing item {x}")

    owner = tuple(agents[int(np.flatnonzero(np.isfinite(matrix[x]))[0])] for x in range(m))
    alloc = Allocation(owner)
    if efx_witness(instance, alloc) is not None or allocation_cost(instance, alloc) != best:
        raise InternalInconsistency(f"matching result {owner} failed verification")
    stats = {
        "edges": sum(len(c) for c in cands),
        "agents": len(agents),
        "solves": solves,
        "wall_us": int((time.perf_counter() - t0) * 1e6),
    }
    return SolveResult(alloc, best, "matching", stats)
