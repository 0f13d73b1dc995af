"""EFx feasibility under identical additive valuations.

Agent ``i`` strongly envies ``j`` when ``v(X_i) < v(X_j) - min(X_j)``. An
empty bundle has nothing to remove and is never strongly envied. A zero-value
item in ``X_j`` makes the comparison against the full ``v(X_j)``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Optional

from .model import Allocation, Instance, check_allocation


class Witness(NamedTuple):
    envious: int
    envied: int
    item: int  # the least-valued item of the envied bundle


def bundle_profile(instance: Instance, allocation: Allocation):
    """One pass over the items: per-agent bundle value and least item.

    Returns ``(values, min_values, min_items)``; the minimum entries are
    ``None`` for empty bundles. Ties on the least value keep the lowest index.
    """
    n = instance.n
    vals = [0] * n
    mins: list[Optional[int]] = [None] * n
    argmins: list[Optional[int]] = [None] * n
    for x, a in enumerate(allocation.owner):
        v = instance.values[x]
        vals[a] += v
        if mins[a] is None or v < mins[a]:
            mins[a] = v
            argmins[a] = x
    return vals, mins, argmins


def strongly_envies(instance: Instance, allocation: Allocation, i: int, j: int) -> bool:
    check_allocation(instance, allocation)
    if i == j or not (0 <= i < instance.n and 0 <= j < instance.n):
        raise ValueError(f"need two distinct agents in [0, {instance.n}), got {i}, {j}")
    vals, mins, _ = bundle_profile(instance, allocation)
    return mins[j] is not None and vals[i] < vals[j] - mins[j]


def efx_witness(instance: Instance, allocation: Allocation) -> Optional[Witness]:
    """First strongly-envious ordered pair in lexicographic order, or ``None``."""
    check_allocation(instance, allocation)
    vals, mins, argmins = bundle_profile(instance, allocation)
    n = instance.n
    for i in range(n):
        for j in range(n):
            if i != j and mins[j] is not None and vals[i] < vals[j] - mins[j]:
                return Witness(i, j, argmins[j])
    return None


def is_efx(instance: Instance, allocation: Allocation) -> bool:
    return efx_witness(instance, allocation) is None


def efx_lower_bound(instance: Instance) -> Fraction:
    """Least bundle value any EFx allocation can have, as an exact rational.

    ``(v(M) - sum of the n-1 largest item values) / n``, clamped at zero.
    """
    top = sorted(instance.values, reverse=True)[: instance.n - 1]
    return max(Fraction(instance.total_value - sum(top), instance.n), Fraction(0))


def max_gap(instance: Instance, allocation: Allocation) -> int:
    check_allocation(instance, allocation)
    vals, _, _ = bundle_profile(instance, allocation)
    return max(vals) - min(vals)
