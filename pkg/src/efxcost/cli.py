"""``efx`` command line: solve, check, kernelize, generate, bench.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 check failed,
4 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import bench, generators
from .brute import DEFAULT_LIMIT, solve_brute
from .dp import DEFAULT_BUDGET, solve_value_vector_dp
from .errors import BudgetExceeded, InstanceError, PreconditionError
from .fairness import efx_witness
from .kernel import kernelize
from .matching import solve_singleton_matching
from .model import (FactorCosts, Instance, allocation_cost, parse_allocation,
                    parse_instance, serialize_instance, serialize_result)
from .typedp import solve_type_dp, type_profile

EXIT_USAGE, EXIT_IO, EXIT_CHECK, EXIT_BUDGET = 1, 2, 3, 4


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _read(path: str) -> str:
    return Path(path).read_text()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _sidecar(out: str, tag: str) -> Path:
    p = Path(out)
    stem = p.with_suffix("") if p.suffix == ".json" else p
    return stem.with_name(f"{stem.name}.{tag}.json")


def _threads(arg: Optional[int]) -> int:
    if arg is not None:
        value = arg
    else:
        env = os.environ.get("EFX_THREADS", "1")
        try:
            value = int(env)
        except ValueError:
            raise _Usage(f"EFX_THREADS must be an integer, got {env!r}")
    if value < 1:
        raise _Usage("thread count must be positive")
    return value


def choose_algorithm(inst: Instance, dp_budget: int = DEFAULT_BUDGET,
                     brute_budget: int = DEFAULT_LIMIT) -> Optional[str]:
    """The solver ``--algo auto`` would run, or ``None`` when nothing fits."""
    if inst.n >= inst.m and all(v > 0 for v in inst.values):
        return "matching"
    if isinstance(inst.cost_model, FactorCosts) and type_profile(inst).beta <= 4:
        return "types"
    if (inst.total_value + 1) ** inst.n <= dp_budget:
        return "dp"
    if inst.n ** inst.m <= brute_budget:
        return "brute"
    return None


def cmd_solve(args) -> int:
    inst = parse_instance(_read(args.inp))
    threads = _threads(args.threads)
    dp_budget = args.budget or DEFAULT_BUDGET
    brute_budget = args.budget or DEFAULT_LIMIT
    algo = args.algo
    if algo == "auto":
        algo = choose_algorithm(inst, dp_budget, brute_budget)
        if algo is None:
            print("instance out of desk scale", file=sys.stderr)
            return EXIT_BUDGET
    if algo == "brute":
        result = solve_brute(inst, brute_budget, threads=threads)
    elif algo == "dp":
        result = solve_value_vector_dp(inst, dp_budget)
    elif algo == "types":
        result = solve_type_dp(inst, dp_budget)
    else:
        result = solve_singleton_matching(inst)
    _emit(serialize_result(result), args.out)
    return 0


def cmd_check(args) -> int:
    inst = parse_instance(_read(args.instance))
    alloc = parse_allocation(_read(args.allocation))
    witness = efx_witness(inst, alloc)
    cost = allocation_cost(inst, alloc)
    if witness is None:
        print(json.dumps({"efx": True, "cost": cost}, separators=(",", ":")))
        return 0
    print(json.dumps({"efx": False, "cost": cost, "witness": witness._asdict()},
                     separators=(",", ":")))
    print(f"agent {witness.envious} strongly envies agent {witness.envied} "
          f"(remove item {witness.item})", file=sys.stderr)
    return EXIT_CHECK


def cmd_kernelize(args) -> int:
    kmap = kernelize(parse_instance(_read(args.inp)))
    Path(args.out).write_text(serialize_instance(kmap.reduced) + "\n")
    _sidecar(args.out, "retained").write_text(
        json.dumps({"retained": list(kmap.retained)}, separators=(",", ":")) + "\n")
    return 0


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "shift":
        _emit(json.dumps({"set": generators.gen_shift_equal_cardinality(args.set)},
                         separators=(",", ":")), args.out)
        return 0
    if kind == "random":
        inst = generators.gen_random(args.n, args.m, args.vmax, args.cost_kind, args.cmax,
                                     args.beta_cap, args.seed)
        side = {"contract": "random", "seed": args.seed}
    else:
        if kind == "partition":
            red = generators.gen_from_partition(args.set)
        elif kind == "factor-hardness":
            red = generators.gen_factor_hardness(args.set)
        elif kind == "binpacking":
            red = generators.gen_from_bin_packing(args.sizes, args.capacity, args.bins)
        elif kind == "gadget-general":
            red = generators.gen_gadget_general(args.set, args.rho)
        else:
            red = generators.gen_gadget_factor(args.set)
        inst, side = red.instance, red.sidecar()
    side_text = json.dumps(side, separators=(",", ":"))
    if args.out:
        Path(args.out).write_text(serialize_instance(inst) + "\n")
        _sidecar(args.out, "contract").write_text(side_text + "\n")
    else:
        print(serialize_instance(inst))
        print(side_text)
    return 0


def cmd_bench(args) -> int:
    names = bench.SUITES if args.suite == "all" else (args.suite,)
    reports = [bench.run_suite(name, args.seed) for name in names]
    print(bench.format_table(reports))
    return 0 if all(r.ok for r in reports) else EXIT_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="efx", description="Minimum-cost EFx allocations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("--in", dest="inp", required=True, help="instance JSON file")
    p.add_argument("--algo", default="auto",
                   choices=["auto", "brute", "dp", "types", "matching"])
    p.add_argument("--out", help="write the result here instead of stdout")
    p.add_argument("--threads", type=int, help="worker threads (default: $EFX_THREADS or 1)")
    p.add_argument("--budget", type=int, help="state budget for every solver")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="check an allocation for EFx")
    p.add_argument("--instance", required=True)
    p.add_argument("--allocation", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("kernelize", help="shrink the agent set")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_kernelize)

    p = sub.add_parser("generate", help="build an instance")
    gen = p.add_subparsers(dest="kind", required=True)
    for name in ("partition", "factor-hardness", "shift", "gadget-factor"):
        g = gen.add_parser(name)
        g.add_argument("--set", type=_int_list, required=True, help="e.g. 1,2,3,4")
    g = gen.add_parser("gadget-general")
    g.add_argument("--set", type=_int_list, required=True)
    g.add_argument("--rho", type=int, default=2)
    g = gen.add_parser("binpacking")
    g.add_argument("--sizes", type=_int_list, required=True)
    g.add_argument("--capacity", type=int, required=True)
    g.add_argument("--bins", type=int, required=True)
    g = gen.add_parser("random")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--vmax", type=int, default=9)
    g.add_argument("--cost-kind", choices=["general", "factor"], default="general")
    g.add_argument("--cmax", type=int, default=9)
    g.add_argument("--beta-cap", type=int)
    g.add_argument("--seed", type=int, default=0)
    for g in gen.choices.values():
        g.add_argument("--out", help="instance file; the sidecar goes next to it")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="run the differential suites")
    p.add_argument("--suite", choices=[*bench.SUITES, "all"], default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_Usage, PreconditionError) as exc:
        print(f"efx: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, InstanceError) as exc:
        print(f"efx: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except BudgetExceeded as exc:
        print(f"efx: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
