"""DP over item-type configurations for the factor cost model.

With ``beta`` distinct item values a bundle is a configuration vector
``x`` (count per type). An allocation is EFx exactly when, for the bundle
maximising ``value - least item`` (call that quantity ``bound``), every other
bundle ``z`` has ``value(z) >= bound`` and ``value(z) - min(z) <= bound``.

The solver guesses the designated agent ``j`` and its configuration ``x``,
then fills the remaining agents (sorted by non-increasing factor) with a DP
over the multiset of items used so far. Tables are numpy arrays indexed by
configuration; one transition is a shifted elementwise minimum.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, InternalInconsistency, PreconditionError
from .fairness import efx_witness
from .model import Allocation, FactorCosts, Instance, SolveResult, allocation_cost

DEFAULT_BUDGET = 10**7

Config = tuple[int, ...]


@dataclass(frozen=True)
class TypeProfile:
    values: tuple[int, ...]  # distinct item values, ascending
    mult: tuple[int, ...]

    @property
    def beta(self) -> int:
        return len(self.values)

    def value(self, x: Sequence[int]) -> int:
        return sum(c * s for c, s in zip(x, self.values))

    def least(self, x: Sequence[int]) -> Optional[int]:
        return next((s for c, s in zip(x, self.values) if c > 0), None)


def type_profile(instance: Instance) -> TypeProfile:
    counts: dict[int, int] = {}
    for v in instance.values:
        counts[v] = counts.get(v, 0) + 1
    values = tuple(sorted(counts))
    return TypeProfile(values, tuple(counts[v] for v in values))


def bundle_bound(profile: TypeProfile, x: Sequence[int]) -> int:
    """Value of ``x`` without its least item; 0 for the empty configuration."""
    least = profile.least(x)
    return 0 if least is None else profile.value(x) - least


def config_satisfies(profile: TypeProfile, z: Sequence[int], bound: int) -> bool:
    return bundle_bound(profile, z) <= bound <= profile.value(z)


class _Grid:
    """Per-configuration value and bound arrays over ``0 <= x <= mult``."""

    def __init__(self, profile: TypeProfile) -> None:
        self.profile = profile
        self.shape = tuple(c + 1 for c in profile.mult)
        idx = np.indices(self.shape)
        self.value = sum(idx[t] * s for t, s in enumerate(profile.values))
        least = np.zeros(self.shape, dtype=np.int64)
        unset = np.ones(self.shape, dtype=bool)
        for t, s in enumerate(profile.values):  # ascending: first present type is the least
            hit = unset & (idx[t] > 0)
            least[hit] = s
            unset &= ~hit
        self.bound = self.value - least
        self.configs = list(np.ndindex(*self.shape))  # lexicographic

    def satisfying(self, bound: int) -> list[Config]:
        mask = (self.bound <= bound) & (self.value >= bound)
        return [c for c in self.configs if mask[c]]

    def with_bound(self, bound: int) -> list[Config]:
        return [c for c in self.configs if self.bound[c] == bound]


def _fill(grid: _Grid, choices: list[Config], alphas: Sequence[int], dtype, inf):
    """Tables ``D[0..len(alphas)]``: ``D[k][m']`` = least cost of giving exactly
    the items ``m'`` to the first ``k`` agents, each taking one of ``choices``."""
    shape = grid.shape
    first = np.full(shape, inf, dtype=dtype)
    first[(0,) * len(shape)] = 0
    tables = [first]
    for alpha in alphas:
        prev = tables[-1]
        cur = np.full(shape, inf, dtype=dtype)
        for z in choices:
            add = alpha * int(grid.value[z])
            src = tuple(slice(0, n - c) for n, c in zip(shape, z))
            dst = tuple(slice(c, None) for c in z)
            np.minimum(cur[dst], prev[src] + add, out=cur[dst])
        np.minimum(cur, inf, out=cur)
        tables.append(cur)
    return tables


def _agent_order(alphas: Sequence[int], exclude: int, reverse: bool) -> list[int]:
    rest = sorted((a for a in range(len(alphas)) if a != exclude),
                  key=lambda a: (-alphas[a], a))
    return rest[::-1] if reverse else rest


def solve_type_dp(instance: Instance, budget: int = DEFAULT_BUDGET,
                  reverse_order: bool = False) -> SolveResult:
    """Minimum-cost EFx allocation for factor costs via item-type configurations.

    ``reverse_order`` flips the order in which the non-designated agents are
    filled; the optimum cost does not depend on it.

    Raises:
        PreconditionError: the instance does not use factor costs.
        BudgetExceeded: the configuration grid has more than ``budget`` cells.
    """
    t0 = time.perf_counter()
    cm = instance.cost_model
    if not isinstance(cm, FactorCosts):
        raise PreconditionError("the type DP needs the factor cost model")
    if instance.m == 0:
        return SolveResult(Allocation(()), 0, "types", {"states": 1, "wall_us": 0})

    n, alphas = instance.n, cm.alphas
    profile = type_profile(instance)
    cells = 1
    for c in profile.mult:
        cells *= c + 1
    if cells > budget:
        raise BudgetExceeded(f"configuration grid of {cells} cells exceeds budget {budget}")
    grid = _Grid(profile)

    total = instance.total_value
    if max(alphas) * total < 2**60:
        dtype, inf = np.int64, np.int64(2**62)
    else:
        dtype, inf = object, 1 << 256
    mult = profile.mult

    bounds = sorted({int(b) for b in np.unique(grid.bound) if int(b) * n <= total})
    tables_run = cells_filled = transitions = 0
    cache: dict[tuple, np.ndarray] = {}  # final layer only; the winner's tables are rebuilt
    best: Optional[tuple] = None  # (cost, j, x, bound)
    for j in range(n):
        order = _agent_order(alphas, j, reverse_order)
        seq = tuple(alphas[a] for a in order)
        for b in bounds:
            key = (b, seq)
            last = cache.get(key)
            if last is None:
                choices = grid.satisfying(b)
                last = cache[key] = _fill(grid, choices, seq, dtype, inf)[-1]
                tables_run += 1
                cells_filled += cells * len(seq)
                transitions += len(choices) * len(seq)
            for x in grid.with_bound(b):
                rest = tuple(c - k for c, k in zip(mult, x))
                c_rest = last[rest]
                if c_rest >= inf:
                    continue
                cand = (int(c_rest) + alphas[j] * int(grid.value[x]), j, x, b)
                if best is None or cand[:3] < best[:3]:
                    best = cand
    if best is None:
        raise InternalInconsistency("no EFx configuration found")

    cost, j, x, b = best
    order = _agent_order(alphas, j, reverse_order)
    configs: dict[int, Config] = {j: x}
    choices = grid.satisfying(b)
    tables = _fill(grid, choices, [alphas[a] for a in order], dtype, inf)
    state = tuple(c - k for c, k in zip(mult, x))
    for k in range(len(order), 0, -1):
        alpha = alphas[order[k - 1]]
        target = tables[k][state]
        for z in choices:
            if all(zc <= sc for zc, sc in zip(z, state)):
                prev = tuple(sc - zc for sc, zc in zip(state, z))
                if tables[k - 1][prev] + alpha * int(grid.value[z]) == target:
                    configs[order[k - 1]] = z
                    state = prev
                    break
        else:
            raise InternalInconsistency(f"cannot trace configuration for agent {order[k - 1]}")

    alloc = _concretize(instance, profile, configs)
    witness = efx_witness(instance, alloc)
    if witness is not None:
        raise InternalInconsistency(f"type-DP optimum {alloc.owner} is not EFx: {witness}")
    if allocation_cost(instance, alloc) != cost:
        raise InternalInconsistency("type-DP cost does not match its allocation")

    stats = {
        "tables": tables_run,
        "states": cells_filled,
        "transitions": transitions,
        "bound": b,
        "designated": j,
        "wall_us": int((time.perf_counter() - t0) * 1e6),
    }
    return SolveResult(alloc, cost, "types", stats)


def _concretize(instance: Instance, profile: TypeProfile,
                configs: dict[int, Config]) -> Allocation:
    """Map per-agent type counts to item indices; within a type, lower indices
    go to lower-numbered agents."""
    pools: dict[int, list[int]] = {v: [] for v in profile.values}
    for item, v in enumerate(instance.values):
        pools[v].append(item)
    owner = [0] * instance.m
    for agent in range(instance.n):
        for t, count in enumerate(configs[agent]):
            pool = pools[profile.values[t]]
            for item in pool[:count]:
                owner[item] = agent
            del pool[:count]
    return Allocation(tuple(owner))
