"""Exhaustive reference solver and EFx-allocation enumerator.

Allocations are enumerated as mixed-radix numbers: item 0 is the most
significant digit and the digit is the owning agent, so enumeration order is
lexicographic order of the owner sequence. Evaluation is vectorised over
blocks of consecutive allocations.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterator, Optional

import numpy as np

from .errors import BudgetExceeded
from .model import Allocation, GeneralCosts, Instance, SolveResult

DEFAULT_LIMIT = 10**8
CHUNK = 1 << 15
_SAFE = 2**62


def _dtype(instance: Instance):
    worst = max(instance.total_value,
                instance.m * instance.cost_model.max_entry() * max(instance.values, default=1),
                instance.m * instance.cost_model.max_entry())
    return np.int64 if worst < _SAFE else object


def _check_budget(instance: Instance, limit: int) -> int:
    total = instance.n ** instance.m
    if total > limit:
        raise BudgetExceeded(
            f"{instance.n}^{instance.m} = {total} allocations exceeds the budget of {limit}")
    return total


class _Blocks:
    """Enumeration split into a high-order prefix and a precomputed low-order block.

    The last ``k`` items form a block of ``n**k`` consecutive allocations whose
    bundle values, minima and costs are computed once; each prefix (one per
    block) adds a constant per-agent offset.
    """

    def __init__(self, instance: Instance) -> None:
        n, m = instance.n, instance.m
        k = 0
        while k < m and n ** (k + 1) <= CHUNK:
            k += 1
        self.instance = instance
        self.k, self.p = k, m - k
        self.count = n ** self.p
        dt = self.dtype = _dtype(instance)
        self.big = instance.total_value + 1
        self.general = isinstance(instance.cost_model, GeneralCosts)

        size = n**k
        idx = np.arange(size, dtype=np.int64)
        suffix = np.empty((size, k), dtype=np.int64)
        for t in range(k):
            suffix[:, t] = (idx // n ** (k - 1 - t)) % n
        vals = np.zeros((size, n), dtype=dt)
        least = np.full((size, n), self.big, dtype=dt)
        cost = np.zeros(size, dtype=dt)
        flat_v, flat_l = vals.reshape(-1), least.reshape(-1)
        base = idx * n
        for t in range(k):
            item = self.p + t
            v = instance.values[item]
            cell = base + suffix[:, t]  # one cell per row: no duplicate indices
            flat_v[cell] += v
            flat_l[cell] = np.minimum(flat_l[cell], v)
            if self.general:
                cost += np.asarray([instance.item_cost(a, item) for a in range(n)],
                                   dtype=dt)[suffix[:, t]]
        self.suffix, self.vals, self.least, self.cost = suffix, vals, least, cost
        self.alphas = None if self.general else np.asarray(instance.cost_model.alphas, dtype=dt)

    def prefix(self, c: int) -> tuple[int, ...]:
        n = self.instance.n
        return tuple((c // n ** (self.p - 1 - t)) % n for t in range(self.p))

    def evaluate(self, c: int):
        """EFx mask and cost vector for block ``c``."""
        inst = self.instance
        pre = self.prefix(c)
        pv = [0] * inst.n
        pl = [self.big] * inst.n
        pc = 0
        for item, a in enumerate(pre):
            v = inst.values[item]
            pv[a] += v
            pl[a] = min(pl[a], v)
            if self.general:
                pc += inst.item_cost(a, item)
        vals = self.vals + np.asarray(pv, dtype=self.dtype)
        least = np.minimum(self.least, np.asarray(pl, dtype=self.dtype))
        reduced = np.where(least < self.big, vals - least, -1)
        # no strong envy  <=>  the poorest bundle is worth at least every v(X_j) - min(X_j)
        efx = vals.min(axis=1) >= reduced.max(axis=1)
        if self.general:
            cost = self.cost + pc
        else:
            cost = (vals * self.alphas).sum(axis=1)
        return efx, cost

    def owner(self, c: int, row: int) -> tuple[int, ...]:
        return self.prefix(c) + tuple(int(a) for a in self.suffix[row])


def enumerate_efx(instance: Instance, limit: int = DEFAULT_LIMIT) -> Iterator[Allocation]:
    """Yield every EFx allocation, in lexicographic owner order."""
    _check_budget(instance, limit)
    blocks = _Blocks(instance)
    for c in range(blocks.count):
        efx, _ = blocks.evaluate(c)
        for row in np.flatnonzero(efx):
            yield Allocation(blocks.owner(c, int(row)))


def _best_in_block(blocks: _Blocks, c: int):
    efx, cost = blocks.evaluate(c)
    rows = np.flatnonzero(efx)
    if not len(rows):
        return None, 0
    k = int(rows[int(np.argmin(cost[rows]))])  # first minimum = lexicographically smallest
    return (int(cost[k]), c, k), len(rows)


def solve_brute(instance: Instance, limit: int = DEFAULT_LIMIT,
                threads: int = 1) -> SolveResult:
    """Minimum-cost EFx allocation by exhaustive enumeration.

    Cost ties go to the lexicographically smallest owner sequence, independent
    of ``threads``.

    Raises:
        BudgetExceeded: if ``n**m > limit``.
    """
    t0 = time.perf_counter()
    total = _check_budget(instance, limit)
    blocks = _Blocks(instance)
    best_of = lambda c: _best_in_block(blocks, c)  # noqa: E731
    if threads > 1 and blocks.count > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(best_of, range(blocks.count)))
    else:
        parts = [best_of(c) for c in range(blocks.count)]

    best: Optional[tuple] = None
    n_efx = 0
    for found, count in parts:
        n_efx += count
        if found is not None and (best is None or found < best):
            best = found
    # identical valuations guarantee an EFx allocation exists
    assert best is not None, "no EFx allocation found"
    cost, c, row = best
    owner = blocks.owner(c, row)
    stats = {"states": total, "efx": n_efx,
             "wall_us": int((time.perf_counter() - t0) * 1e6)}
    return SolveResult(Allocation(owner), cost, "brute", stats)
