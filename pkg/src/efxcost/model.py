"""Problem data model and the JSON formats for instances, allocations and results.

Agents and items are 0-based. Values, costs and cost factors are
non-negative integers; the formats never contain floats.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, Union

from .errors import (
    DimensionMismatch,
    InvalidAllocation,
    MalformedDocument,
    NegativeNumber,
    OverflowRisk,
)

U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class GeneralCosts:
    """Per-agent, per-item cost table; a bundle costs the sum of its entries."""

    costs: tuple[tuple[int, ...], ...]

    kind = "general"

    def item_cost(self, agent: int, item: int, values: Sequence[int]) -> int:
        return self.costs[agent][item]

    def max_entry(self) -> int:
        return max((c for row in self.costs for c in row), default=0)


@dataclass(frozen=True)
class FactorCosts:
    """Agent ``j`` pays ``alphas[j] * v(bundle)``."""

    alphas: tuple[int, ...]

    kind = "factor"

    def item_cost(self, agent: int, item: int, values: Sequence[int]) -> int:
        return self.alphas[agent] * values[item]

    def max_entry(self) -> int:
        return max(self.alphas, default=0)


CostModel = Union[GeneralCosts, FactorCosts]


def _check_int(x: Any, location: str) -> int:
    # bool is an int subclass; JSON true/false must not pass as 1/0
    if isinstance(x, bool) or not isinstance(x, int):
        raise MalformedDocument(f"expected an integer, got {type(x).__name__}", location)
    if x < 0:
        raise NegativeNumber(f"{x} < 0", location)
    return x


def _check_list(x: Any, location: str) -> list:
    if not isinstance(x, (list, tuple)):
        raise MalformedDocument(f"expected an array, got {type(x).__name__}", location)
    return list(x)


@dataclass(frozen=True)
class Instance:
    """``n`` agents sharing the additive valuation ``values`` over ``m`` items."""

    n: int
    values: tuple[int, ...]
    cost_model: CostModel

    def __post_init__(self) -> None:
        n = _check_int(self.n, "n")
        if n < 1:
            raise MalformedDocument("need at least one agent", "n")
        values = tuple(_check_int(v, f"values[{i}]")
                       for i, v in enumerate(_check_list(self.values, "values")))
        object.__setattr__(self, "values", values)
        m = len(values)

        cm = self.cost_model
        if isinstance(cm, GeneralCosts):
            rows = _check_list(cm.costs, "cost_model.costs")
            if len(rows) != n:
                raise DimensionMismatch(f"{len(rows)} cost rows for n={n} agents",
                                        "cost_model.costs")
            table = []
            for a, row in enumerate(rows):
                row = _check_list(row, f"cost_model.costs[{a}]")
                if len(row) != m:
                    raise DimensionMismatch(f"{len(row)} entries for m={m} items",
                                            f"cost_model.costs[{a}]")
                table.append(tuple(_check_int(c, f"cost_model.costs[{a}][{x}]")
                                   for x, c in enumerate(row)))
            cm = GeneralCosts(tuple(table))
        elif isinstance(cm, FactorCosts):
            alphas = _check_list(cm.alphas, "cost_model.alphas")
            if len(alphas) != n:
                raise DimensionMismatch(f"{len(alphas)} factors for n={n} agents",
                                        "cost_model.alphas")
            cm = FactorCosts(tuple(_check_int(a, f"cost_model.alphas[{j}]")
                                   for j, a in enumerate(alphas)))
        else:
            raise MalformedDocument(f"unknown cost model {cm!r}", "cost_model")
        object.__setattr__(self, "cost_model", cm)

        vmax = max(values, default=0)
        cmax = cm.max_entry()
        if n * m * max(vmax, 1) * max(cmax, 1) > U64_MAX:
            raise OverflowRisk(
                f"n*m*max_value*max_cost = {n}*{m}*{vmax}*{cmax} exceeds 2^64-1")

    @property
    def m(self) -> int:
        return len(self.values)

    @property
    def total_value(self) -> int:
        return sum(self.values)

    def item_cost(self, agent: int, item: int) -> int:
        return self.cost_model.item_cost(agent, item, self.values)

    def cost_row(self, agent: int) -> list[int]:
        return [self.item_cost(agent, x) for x in range(self.m)]

    def restrict_agents(self, agents: Sequence[int]) -> "Instance":
        """The same items over the listed agents only (in the listed order)."""
        cm = self.cost_model
        if isinstance(cm, GeneralCosts):
            new: CostModel = GeneralCosts(tuple(cm.costs[a] for a in agents))
        else:
            new = FactorCosts(tuple(cm.alphas[a] for a in agents))
        return Instance(len(agents), self.values, new)


def general_instance(n: int, values: Iterable[int], costs: Iterable[Iterable[int]]) -> Instance:
    return Instance(n, tuple(values), GeneralCosts(tuple(tuple(r) for r in costs)))


def factor_instance(values: Iterable[int], alphas: Iterable[int]) -> Instance:
    alphas = tuple(alphas)
    return Instance(len(alphas), tuple(values), FactorCosts(alphas))


@dataclass(frozen=True)
class Allocation:
    """``owner[x]`` is the agent holding item ``x``."""

    owner: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "owner", tuple(self.owner))

    def bundles(self, n: int) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(n)]
        for item, agent in enumerate(self.owner):
            out[agent].append(item)
        return out


def check_allocation(instance: Instance, allocation: Allocation) -> None:
    """Raise :class:`InvalidAllocation` unless ``allocation`` is a total assignment."""
    if len(allocation.owner) != instance.m:
        raise InvalidAllocation(
            f"{len(allocation.owner)} owners for m={instance.m} items", "owner")
    for x, a in enumerate(allocation.owner):
        if isinstance(a, bool) or not isinstance(a, int) or not 0 <= a < instance.n:
            raise InvalidAllocation(f"agent {a!r} not in [0, {instance.n})", f"owner[{x}]")


def bundle_value(instance: Instance, bundle: Iterable[int]) -> int:
    total = 0
    for x in bundle:
        if not 0 <= x < instance.m:
            raise IndexError(f"item {x} out of range for m={instance.m}")
        total += instance.values[x]
    return total


def bundle_values(instance: Instance, allocation: Allocation) -> list[int]:
    vals = [0] * instance.n
    for x, a in enumerate(allocation.owner):
        vals[a] += instance.values[x]
    return vals


def allocation_cost(instance: Instance, allocation: Allocation) -> int:
    check_allocation(instance, allocation)
    cm = instance.cost_model
    if isinstance(cm, GeneralCosts):
        return sum(cm.costs[a][x] for x, a in enumerate(allocation.owner))
    return sum(alpha * v for alpha, v in zip(cm.alphas, bundle_values(instance, allocation)))


@dataclass(frozen=True)
class SolveResult:
    allocation: Allocation
    cost: int
    algorithm: str
    stats: dict[str, int] = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------- JSON formats

def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _reject_constant(name: str) -> Any:
    raise MalformedDocument(f"non-finite number {name}")


def _loads(text: str) -> Any:
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def _expect_keys(doc: Any, required: set[str], where: str) -> dict:
    if not isinstance(doc, dict):
        raise MalformedDocument("expected an object", where)
    missing = required - doc.keys()
    if missing:
        raise MalformedDocument(f"missing key(s) {sorted(missing)}", where)
    extra = doc.keys() - required
    if extra:
        raise MalformedDocument(f"unexpected key(s) {sorted(extra)}", where)
    return doc


def instance_from_dict(doc: Any) -> Instance:
    doc = _expect_keys(doc, {"n", "values", "cost_model"}, "")
    cm = doc["cost_model"]
    if not isinstance(cm, dict) or "type" not in cm:
        raise MalformedDocument("cost_model needs a 'type'", "cost_model")
    if cm["type"] == "general":
        _expect_keys(cm, {"type", "costs"}, "cost_model")
        rows = _check_list(cm["costs"], "cost_model.costs")
        model: CostModel = GeneralCosts(tuple(
            tuple(_check_list(r, f"cost_model.costs[{a}]")) for a, r in enumerate(rows)))
    elif cm["type"] == "factor":
        _expect_keys(cm, {"type", "alphas"}, "cost_model")
        model = FactorCosts(tuple(_check_list(cm["alphas"], "cost_model.alphas")))
    else:
        raise MalformedDocument(f"unknown cost model type {cm['type']!r}", "cost_model.type")
    return Instance(doc["n"], tuple(_check_list(doc["values"], "values")), model)


def instance_to_dict(instance: Instance) -> dict:
    cm = instance.cost_model
    if isinstance(cm, GeneralCosts):
        model = {"type": "general", "costs": [list(r) for r in cm.costs]}
    else:
        model = {"type": "factor", "alphas": list(cm.alphas)}
    return {"n": instance.n, "values": list(instance.values), "cost_model": model}


def parse_instance(text: str) -> Instance:
    return instance_from_dict(_loads(text))


def serialize_instance(instance: Instance) -> str:
    return _dumps(instance_to_dict(instance))


def parse_allocation(text: str) -> Allocation:
    doc = _expect_keys(_loads(text), {"owner"}, "")
    owners = _check_list(doc["owner"], "owner")
    return Allocation(tuple(_check_int(a, f"owner[{x}]") for x, a in enumerate(owners)))


def serialize_allocation(allocation: Allocation) -> str:
    return _dumps({"owner": list(allocation.owner)})


def result_to_dict(result: SolveResult) -> dict:
    return {
        "cost": result.cost,
        "owner": list(result.allocation.owner),
        "algorithm": result.algorithm,
        "stats": {k: int(v) for k, v in result.stats.items()},
    }


def serialize_result(result: SolveResult) -> str:
    return _dumps(result_to_dict(result))


def parse_result(text: str) -> SolveResult:
    doc = _expect_keys(_loads(text), {"cost", "owner", "algorithm", "stats"}, "")
    owners = _check_list(doc["owner"], "owner")
    if not isinstance(doc["algorithm"], str):
        raise MalformedDocument("expected a string", "algorithm")
    stats = doc["stats"]
    if not isinstance(stats, dict):
        raise MalformedDocument("expected an object", "stats")
    return SolveResult(
        allocation=Allocation(tuple(_check_int(a, f"owner[{x}]") for x, a in enumerate(owners))),
        cost=_check_int(doc["cost"], "cost"),
        algorithm=doc["algorithm"],
        stats={k: _check_int(v, f"stats.{k}") for k, v in stats.items()},
    )
