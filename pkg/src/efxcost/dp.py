"""Pseudo-polynomial DP over bundle-value vectors for general additive costs.

Two tables are built:

* a feasibility frontier over the items in ascending ``(value, index)``
  order: layer ``i`` holds every exactly achievable value vector of the ``i``
  smallest items. A query vector ``z`` is feasible at layer ``i`` when some
  achievable vector dominates it componentwise;
* a cost table over the items in the reverse (descending) order, so each
  item given to an agent is that agent's least item so far. A transition is
  admitted only if the ``m - i`` unprocessed items can still lift every
  agent to the required level.

In the default (exact) mode a state is ``(y, bar)``: the value vector plus
``bar = max_k v(X_k) - min(X_k)`` over the bundles built so far. Because
items arrive in descending order, giving ``x_i`` to agent ``j`` turns ``j``'s
reduced value into its pre-update ``y_j``, so ``bar' = max(bar, y_j)``, and
every agent must be liftable to ``bar'``. The final layer then holds exactly
the EFx allocations. For equal ``y``, a state whose bar and cost are both
beaten (cost strictly) is dropped.

``literal=True`` runs the value-vector-only recurrence, which lifts the
others only to ``y_j`` and forgets earlier requirements; its optimum can fail
EFx, which is reported as :class:`InternalInconsistency`.

Both tables are sparse: only reached states are stored.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import BudgetExceeded, InternalInconsistency
from .fairness import efx_lower_bound, efx_witness
from .model import Allocation, Instance, SolveResult, allocation_cost

DEFAULT_BUDGET = 10**7

State = tuple[int, ...]
Key = tuple[State, int]  # (value vector, bar)


def ascending_order(instance: Instance) -> list[int]:
    return sorted(range(instance.m), key=lambda x: (instance.values[x], x))


@dataclass
class FeasibilityFrontier:
    order: list[int]
    layers: list[set[State]]
    sums: list[int]
    _arrays: dict = field(default_factory=dict, repr=False)
    _cache: dict = field(default_factory=dict, repr=False)

    def achievable(self, i: int) -> set[State]:
        return self.layers[i]

    def feasible(self, i: int, y: State) -> bool:
        """Can the ``i`` smallest items give every agent ``k`` at least ``y[k]``?"""
        key = (i, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if sum(y) > self.sums[i]:
            ok = False
        elif not any(y):
            ok = True
        elif y in self.layers[i]:
            ok = True
        else:
            arr = self._arrays.get(i)
            if arr is None:
                arr = self._arrays[i] = np.array(sorted(self.layers[i]), dtype=object)
            ok = bool(np.any(np.all(arr >= np.array(y, dtype=object), axis=1)))
        self._cache[key] = ok
        return ok


def build_feasibility_frontier(instance: Instance,
                               budget: int = DEFAULT_BUDGET) -> FeasibilityFrontier:
    n = instance.n
    order = ascending_order(instance)
    layer: set[State] = {(0,) * n}
    layers, sums = [layer], [0]
    for x in order:
        v = instance.values[x]
        if v == 0:
            nxt = set(layer)
        else:
            nxt = {y[:j] + (y[j] + v,) + y[j + 1:] for y in layer for j in range(n)}
        if len(nxt) > budget:
            raise BudgetExceeded(f"frontier layer of {len(nxt)} states exceeds budget {budget}")
        layers.append(nxt)
        sums.append(sums[-1] + v)
        layer = nxt
    return FeasibilityFrontier(order, layers, sums)


def _trivial(instance: Instance, t0: float) -> Optional[SolveResult]:
    if instance.m == 0:
        return SolveResult(Allocation(()), 0, "dp", {"states": 1, "wall_us": 0})
    if instance.n == 1:
        alloc = Allocation((0,) * instance.m)
        return SolveResult(alloc, allocation_cost(instance, alloc), "dp",
                           {"states": instance.m + 1,
                            "wall_us": int((time.perf_counter() - t0) * 1e6)})
    return None


def solve_value_vector_dp(instance: Instance, budget: int = DEFAULT_BUDGET,
                          prune: bool = False, literal: bool = False) -> SolveResult:
    """Minimum-cost EFx allocation through the value-vector DP.

    Args:
        budget: maximum number of states in any single layer of either table.
        prune: drop states in which some agent can no longer reach the
            EFx lower bound on bundle values (off by default).
        literal: use the value-vector-only state and gate (see module notes).

    Raises:
        BudgetExceeded: a layer grew past ``budget``.
        InternalInconsistency: the reconstructed optimum is not EFx.
    """
    t0 = time.perf_counter()
    trivial = _trivial(instance, t0)
    if trivial is not None:
        return trivial

    n, m = instance.n, instance.m
    frontier = build_feasibility_frontier(instance, budget)
    desc = frontier.order[::-1]
    lower = efx_lower_bound(instance) if prune else Fraction(0)

    start: Key = ((0,) * n, 0)
    costs: list[dict[Key, int]] = [{start: 0}]
    # parents[i][key] = every (previous key, agent) reaching it at minimum cost
    parents: list[dict[Key, list[tuple[Key, int]]]] = [{}]
    transitions = dominated = 0
    for i in range(1, m + 1):
        x = desc[i - 1]
        v = instance.values[x]
        item_costs = [instance.item_cost(j, x) for j in range(n)]
        rest = frontier.sums[m - i]
        layer: dict[Key, int] = {}
        back: dict[Key, list[tuple[Key, int]]] = {}
        for key, cy in costs[-1].items():
            y, bar = key
            for j in range(n):
                transitions += 1
                yj = y[j]
                y2 = y[:j] + (yj + v,) + y[j + 1:]
                if literal:
                    bar2 = 0
                    z = tuple(yj - yk if yj > yk else 0 for yk in y)
                else:
                    bar2 = bar if bar > yj else yj
                    z = tuple(bar2 - yk if bar2 > yk else 0 for yk in y2)
                if not frontier.feasible(m - i, z):
                    continue
                if prune and any(yk + rest < lower for yk in y2):
                    continue
                k2 = (y2, bar2)
                c = cy + item_costs[j]
                old = layer.get(k2)
                if old is None or c < old:
                    layer[k2] = c
                    back[k2] = [(key, j)]
                elif c == old:
                    back[k2].append((key, j))
        if not literal:
            dominated += _drop_dominated(layer, back)
        if len(layer) > budget:
            raise BudgetExceeded(f"cost layer {i} has {len(layer)} states, budget {budget}")
        if not layer:
            raise InternalInconsistency(f"no admissible state after item {i} of {m}")
        costs.append(layer)
        parents.append(back)

    best = min(costs[m].values())
    finals = {k for k, c in costs[m].items() if c == best}
    owner = _lexicographic_path(desc, parents, finals)
    alloc = Allocation(owner)

    witness = efx_witness(instance, alloc)
    if witness is not None:
        raise InternalInconsistency(
            f"DP optimum {owner} (cost {best}) is not EFx: {witness}")
    recomputed = allocation_cost(instance, alloc)
    if recomputed != best:
        raise InternalInconsistency(f"DP cost {best} != recomputed {recomputed}")

    stats = {
        "states": sum(len(layer) for layer in costs),
        "frontier_states": sum(len(layer) for layer in frontier.layers),
        "transitions": transitions,
        "dominated": dominated,
        "wall_us": int((time.perf_counter() - t0) * 1e6),
    }
    return SolveResult(alloc, best, "dp-literal" if literal else "dp", stats)


def _drop_dominated(layer: dict, back: dict) -> int:
    """Remove ``(y, bar)`` when some ``(y, bar')`` has ``bar' < bar`` and a strictly lower cost.

    Equal-cost states are kept so the lexicographic tie-break sees every
    optimal path.
    """
    by_y: dict[State, list[tuple[int, int]]] = {}
    for (y, bar), c in layer.items():
        by_y.setdefault(y, []).append((bar, c))
    dropped = 0
    for y, entries in by_y.items():
        if len(entries) < 2:
            continue
        entries.sort()
        best = None
        for bar, c in entries:
            if best is not None and c > best:
                del layer[(y, bar)]
                del back[(y, bar)]
                dropped += 1
            elif best is None or c < best:
                best = c
    return dropped


def _lexicographic_path(desc: list[int], parents, finals) -> tuple[int, ...]:
    """Lexicographically smallest owner sequence among all minimum-cost paths.

    Owner order is by original item index, not processing order, so the
    choice is made greedily item by item, checking that some optimal path
    still respects every choice fixed so far.
    """
    m = len(desc)
    useful: list[set[Key]] = [set() for _ in range(m + 1)]
    useful[m] = set(finals)
    for i in range(m, 0, -1):
        useful[i - 1] = {prev for t in useful[i] for prev, _ in parents[i][t]}

    step_of = {x: i + 1 for i, x in enumerate(desc)}
    fixed: list[Optional[int]] = [None] * (m + 1)

    def path_exists() -> bool:
        reach = useful[0]
        for i in range(1, m + 1):
            want = fixed[i]
            reach = {t for t in useful[i]
                     if any(p in reach and (want is None or a == want)
                            for p, a in parents[i][t])}
            if not reach:
                return False
        return True

    for x in range(m):
        step = step_of[x]
        agents = sorted({a for t in useful[step] for _, a in parents[step][t]})
        for a in agents[:-1]:
            fixed[step] = a
            if path_exists():
                break
        else:
            fixed[step] = agents[-1]
    return tuple(fixed[step_of[x]] for x in range(m))
