"""Agent-count kernelization.

Only cheap agents matter: an item can be given to any of its ``m`` cheapest
agents unless the other items already occupy them, and the same holds for a
pair of items placed together. Keeping those agents (and dropping the rest,
who would receive empty bundles) preserves the optimum.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import NamedTuple, Optional

from .fairness import Witness, efx_witness
from .model import Allocation, Instance, check_allocation


@dataclass(frozen=True)
class KernelMap:
    retained: tuple[int, ...]  # original agent indices, ascending
    reduced: Instance
    original: Instance = field(repr=False, compare=False)


class Lifted(NamedTuple):
    allocation: Allocation
    efx: bool
    witness: Optional[Witness]


def size_bound(m: int) -> int:
    return m * m + m * comb(m, 2)


def _cheapest(instance: Instance, items: tuple[int, ...], k: int) -> list[int]:
    key = lambda a: (sum(instance.item_cost(a, x) for x in items), a)  # noqa: E731
    return sorted(range(instance.n), key=key)[:k]


def kernelize(instance: Instance, zero_items: bool = True) -> KernelMap:
    """Keep each item's and each item pair's ``m`` cheapest agents.

    Pairs qualify when at least one item has positive value. Single items
    qualify regardless of value unless ``zero_items`` is false, in which case
    only positive items do; a zero-value item may then be forced onto an
    expensive agent in the reduced instance while the original had a free one.
    When no rule applies every agent is kept.
    """
    m = instance.m
    vals = instance.values
    keep: set[int] = set()
    for x in range(m):
        if vals[x] > 0 or zero_items:
            keep.update(_cheapest(instance, (x,), m))
    for x, y in combinations(range(m), 2):
        if vals[x] > 0 or vals[y] > 0:
            keep.update(_cheapest(instance, (x, y), m))
    retained = tuple(sorted(keep)) if keep else tuple(range(instance.n))
    return KernelMap(retained, instance.restrict_agents(retained), instance)


def lift_allocation(kmap: KernelMap, reduced_alloc: Allocation) -> Lifted:
    """Relabel a reduced allocation onto the original agents and verify EFx there.

    Agents outside ``kmap.retained`` get empty bundles.
    """
    check_allocation(kmap.reduced, reduced_alloc)
    alloc = Allocation(tuple(kmap.retained[a] for a in reduced_alloc.owner))
    witness = efx_witness(kmap.original, alloc)
    return Lifted(alloc, witness is None, witness)
