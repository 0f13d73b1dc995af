"""Seeded differential suites: every fast solver against the exhaustive one."""
from __future__ import annotations

import random
import time
from itertools import combinations
from typing import Callable, Iterator, NamedTuple

from .brute import solve_brute
from .dp import solve_value_vector_dp
from .generators import (gen_factor_hardness, gen_from_bin_packing, gen_from_partition,
                         gen_gadget_factor, gen_gadget_general, gen_random)
from .kernel import kernelize, lift_allocation, size_bound
from .matching import solve_singleton_matching
from .model import allocation_cost, general_instance
from .typedp import solve_type_dp

SUITES = ("dp", "types", "matching", "kernel", "reductions")


class SuiteReport(NamedTuple):
    suite: str
    instances: int
    agreements: int
    max_ms: float

    @property
    def ok(self) -> bool:
        return self.instances == self.agreements


def has_partition(S: list[int], equal_size: bool = False) -> bool:
    """Exhaustive check for a split of ``S`` into two equal-sum halves."""
    total = sum(S)
    if total % 2 or (equal_size and len(S) % 2):
        return False
    sizes = [len(S) // 2] if equal_size else range(len(S) + 1)
    return any(2 * sum(c) == total for r in sizes for c in combinations(S, r))


def packable(sizes: list[int], B: int, bins: int) -> bool:
    """Exhaustive first-fit-with-backtracking check for bin packing."""
    loads = [0] * bins
    order = sorted(sizes, reverse=True)

    def place(k: int) -> bool:
        if k == len(order):
            return True
        seen = set()
        for b in range(bins):
            if loads[b] + order[k] <= B and loads[b] not in seen:
                seen.add(loads[b])
                loads[b] += order[k]
                if place(k + 1):
                    return True
                loads[b] -= order[k]
        return False

    return place(0)


def _dp_cases(rng: random.Random) -> Iterator[Callable[[], bool]]:
    for _ in range(150):
        inst = gen_random(rng.randint(2, 3), rng.randint(0, 6), 6, "general", 9,
                          seed=rng.getrandbits(32))
        yield lambda inst=inst: solve_value_vector_dp(inst).cost == solve_brute(inst).cost


def _types_cases(rng: random.Random) -> Iterator[Callable[[], bool]]:
    for _ in range(100):
        inst = gen_random(rng.randint(1, 4), rng.randint(0, 8), 9, "factor", 4,
                          beta_cap=rng.randint(1, 3), seed=rng.getrandbits(32))
        if inst.n ** inst.m > 10**5:
            inst = inst.restrict_agents(range(min(inst.n, 3)))

        def check(inst=inst) -> bool:
            want = solve_brute(inst).cost
            return (solve_type_dp(inst).cost == want
                    and solve_type_dp(inst, reverse_order=True).cost == want)
        yield check


def _matching_cases(rng: random.Random) -> Iterator[Callable[[], bool]]:
    for _ in range(100):
        m = rng.randint(2, 3)
        n = rng.randint(m, m + 3)
        inst = general_instance(n, [rng.randint(1, 5) for _ in range(m)],
                                [[rng.randint(0, 9) for _ in range(m)] for _ in range(n)])

        def check(inst=inst) -> bool:
            b = solve_brute(inst)
            alone = len(set(b.allocation.owner)) == inst.m
            return alone and solve_singleton_matching(inst).cost == b.cost
        yield check


def _kernel_cases(rng: random.Random) -> Iterator[Callable[[], bool]]:
    for _ in range(40):
        inst = gen_random(rng.randint(10, 40), rng.randint(2, 3), 5, rng.choice(["general", "factor"]),
                          9, seed=rng.getrandbits(32))

        def check(inst=inst) -> bool:
            kmap = kernelize(inst)
            red = solve_brute(kmap.reduced)
            lifted = lift_allocation(kmap, red.allocation)
            return (red.cost == solve_brute(inst).cost and lifted.efx
                    and allocation_cost(inst, lifted.allocation) == red.cost
                    and len(kmap.retained) <= size_bound(inst.m))
        yield check


def _reduction_cases(rng: random.Random) -> Iterator[Callable[[], bool]]:
    for _ in range(20):
        S = [rng.randint(1, 6) for _ in range(rng.randint(2, 5))]
        if sum(S) % 2:
            S[0] += 1
        yes, eq = has_partition(S), has_partition(S, equal_size=True)

        def check(S=S, yes=yes, eq=eq) -> bool:
            ok = (solve_brute(gen_from_partition(S).instance).cost <= sum(S) // 2) == yes
            fh = gen_factor_hardness(S)
            ok &= (solve_value_vector_dp(fh.instance).cost <= fh.threshold) == eq
            for rho in (2, 3, 5):
                c = solve_brute(gen_gadget_general(S, rho).instance).cost
                ok &= c == 1 if yes else c >= rho
            gf = gen_gadget_factor(S)
            c = solve_brute(gf.instance).cost
            ok &= c == gf.threshold if yes else c >= gf.threshold
            return ok
        yield check
    for _ in range(10):
        bins, B = rng.randint(2, 3), rng.randint(3, 6)
        sizes = _random_sizes(rng, bins * B, B + 1)
        fit = packable(sizes, B, bins)
        red = gen_from_bin_packing(sizes, B, bins)
        yield lambda red=red, fit=fit: (solve_type_dp(red.instance).cost <= red.threshold) == fit


def _random_sizes(rng: random.Random, total: int, cap: int) -> list[int]:
    sizes = []
    while total:
        s = rng.randint(1, min(cap, total))
        sizes.append(s)
        total -= s
    return sizes


_CASES = {
    "dp": _dp_cases,
    "types": _types_cases,
    "matching": _matching_cases,
    "kernel": _kernel_cases,
    "reductions": _reduction_cases,
}


def run_suite(name: str, seed: int = 0) -> SuiteReport:
    rng = random.Random(f"{name}:{seed}")
    total = agree = 0
    worst = 0.0
    for case in _CASES[name](rng):
        t0 = time.perf_counter()
        ok = case()
        worst = max(worst, (time.perf_counter() - t0) * 1e3)
        total += 1
        agree += bool(ok)
    return SuiteReport(name, total, agree, worst)


def format_table(reports: list[SuiteReport]) -> str:
    lines = [f"{'suite':<12}{'instances':>10}{'agree':>8}{'max ms':>10}"]
    for r in reports:
        lines.append(f"{r.suite:<12}{r.instances:>10}{r.agreements:>8}{r.max_ms:>10.1f}")
    return "\n".join(lines)
