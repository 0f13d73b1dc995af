"""Instance builders from number-partitioning and bin-packing inputs.

Each reduction returns the instance together with a cost threshold and a
short statement of what the threshold promises, so that a solver's optimum
can be checked against the yes/no status of the source problem.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import PreconditionError
from .model import Instance, factor_instance, general_instance


class Reduction(NamedTuple):
    instance: Instance
    threshold: int
    contract: str

    def sidecar(self) -> dict:
        return {"threshold": self.threshold, "contract": self.contract}


def _no_instance(contract: str) -> Reduction:
    # optimum is 1: agent 1 must take at least one of the three unit items
    return Reduction(factor_instance([1, 1, 1], [0, 1]), 0, contract)


def _positive(S: Sequence[int], what: str = "S") -> list[int]:
    S = list(S)
    if any(not isinstance(s, int) or isinstance(s, bool) or s <= 0 for s in S):
        raise PreconditionError(f"{what} must contain positive integers")
    return S


def _half(S: list[int]) -> int:
    if sum(S) % 2:
        raise PreconditionError(f"sum of S is odd ({sum(S)})")
    return sum(S) // 2


def gen_from_partition(S: Sequence[int]) -> Reduction:
    """Two agents; agent 0 is free, agent 1 pays item values plus ``T+1`` for an extra zero item.

    ``S`` splits into two equal-sum halves iff the optimum is at most ``T``.
    """
    S = _positive(S)
    if not S:
        raise PreconditionError("S is empty")
    T = _half(S)
    values = S + [0]
    costs = [[0] * len(values), S + [T + 1]]
    return Reduction(general_instance(2, values, costs), T,
                     f"equal-sum partition iff optimum <= {T}")


def gen_factor_hardness(S: Sequence[int]) -> Reduction:
    """Two agents with factors (0, 1); items ``s + B`` plus one item of value ``T+1``.

    Inputs with odd size or odd sum have no equal-cardinality partition and
    map to a fixed no-instance. An element above ``T`` needs no special case:
    the construction already prices it above the threshold.
    """
    S = _positive(S)
    contract = "equal-cardinality equal-sum partition iff optimum <= threshold"
    if len(S) % 2 or sum(S) % 2:
        return _no_instance(contract)
    m, T = len(S), sum(S) // 2
    B = (m + 1) * (2 * T + 1)
    values = [s + B for s in S] + [T + 1]
    return Reduction(factor_instance(values, [0, 1]), m // 2 * B + T, contract)


def gen_from_bin_packing(sizes: Sequence[int], B: int, bins: int) -> Reduction:
    """``bins + 1`` agents, one free; items are the sizes plus two items of value ``B``.

    The sizes fit into ``bins`` bins of capacity ``B`` iff the optimum is at
    most ``bins * B``.
    """
    sizes = _positive(sizes, "sizes")
    if B <= 0 or bins <= 0:
        raise PreconditionError("capacity and bin count must be positive")
    if sum(sizes) != bins * B:
        raise PreconditionError(f"sizes sum to {sum(sizes)}, expected bins*B = {bins * B}")
    contract = f"packable iff optimum <= {bins * B}"
    if any(s > B for s in sizes):
        return _no_instance(contract)
    inst = factor_instance(sizes + [B, B], [0] + [1] * bins)
    return Reduction(inst, bins * B, contract)


def gen_shift_equal_cardinality(S: Sequence[int]) -> list[int]:
    """Add ``m*T`` to every element; equal-cardinality partition status is kept."""
    S = _positive(S)
    T = _half(S)
    return [s + len(S) * T for s in S]


def satisfies_weight_restriction(S: Sequence[int], eps: Fraction | int) -> bool:
    """Is every element below ``2T/m + eps``?"""
    if not S:
        return True
    bound = Fraction(sum(S), len(S)) + eps
    return all(s < bound for s in S)


def gen_gadget_general(S: Sequence[int], rho: int) -> Reduction:
    """Three agents; items ``S``, two zero-value items and ``x*`` of value ``T``.

    Agent 0 pays ``rho`` for ``x*`` and the second zero item, agent 1 for
    ``x*`` and the first zero item, agent 2 pays ``rho`` for everything but
    ``x*``, which costs it 1. With an equal-sum partition the optimum is 1,
    otherwise it is at least ``rho``.
    """
    S = _positive(S)
    if not isinstance(rho, int) or rho < 2:
        raise PreconditionError(f"rho must be an integer >= 2, got {rho}")
    T = _half(S)
    m = len(S)
    values = S + [0, 0, T]
    star = m + 2
    c0 = [0] * (m + 3)
    c1 = [0] * (m + 3)
    c0[star] = c0[m + 1] = rho
    c1[star] = c1[m] = rho
    c2 = [rho] * (m + 3)
    c2[star] = 1
    return Reduction(general_instance(3, values, [c0, c1, c2]), 1,
                     f"partition => optimum = 1; no partition => optimum >= {rho}")


def gen_gadget_factor(S: Sequence[int]) -> Reduction:
    """Three agents with factors (0, 1, 1); items ``S`` plus two items of value ``T``.

    With an equal-sum partition the optimum is exactly ``2T``.
    """
    S = _positive(S)
    T = _half(S)
    return Reduction(factor_instance(S + [T, T], [0, 1, 1]), 2 * T,
                     f"partition => optimum = {2 * T}")


def gen_random(n: int, m: int, vmax: int, cost_kind: str = "general", cmax: int = 9,
               beta_cap: Optional[int] = None, seed: int = 0) -> Instance:
    """Seeded random instance; equal arguments give equal instances.

    Values are uniform in ``[0, vmax]``. With ``beta_cap`` the values are drawn
    from at most that many distinct levels. Costs (or factors) are uniform in
    ``[0, cmax]``.
    """
    if n < 1 or m < 0 or vmax < 0 or cmax < 0:
        raise PreconditionError("need n >= 1 and non-negative m, vmax, cmax")
    if beta_cap is not None and beta_cap < 1:
        raise PreconditionError("beta_cap must be positive")
    if cost_kind not in ("general", "factor"):
        raise PreconditionError(f"unknown cost kind {cost_kind!r}")
    rng = random.Random(seed)
    if beta_cap is None:
        values = [rng.randint(0, vmax) for _ in range(m)]
    else:
        levels = rng.sample(range(vmax + 1), min(beta_cap, vmax + 1))
        values = [rng.choice(levels) for _ in range(m)]
    if cost_kind == "factor":
        return factor_instance(values, [rng.randint(0, cmax) for _ in range(n)])
    costs = [[rng.randint(0, cmax) for _ in range(m)] for _ in range(n)]
    return general_instance(n, values, costs)
