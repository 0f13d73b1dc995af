"""Minimum-cost EFx allocations under identical additive valuations."""
from .brute import enumerate_efx, solve_brute
from .dp import build_feasibility_frontier, solve_value_vector_dp
from .errors import (BudgetExceeded, EfxError, InstanceError, InternalInconsistency,
                     PreconditionError)
from .fairness import efx_lower_bound, efx_witness, is_efx, max_gap, strongly_envies
from .generators import (gen_factor_hardness, gen_from_bin_packing, gen_from_partition,
                         gen_gadget_factor, gen_gadget_general, gen_random,
                         gen_shift_equal_cardinality)
from .kernel import KernelMap, kernelize, lift_allocation
from .matching import solve_singleton_matching
from .model import (Allocation, FactorCosts, GeneralCosts, Instance, SolveResult,
                    allocation_cost, bundle_value, factor_instance, general_instance,
                    parse_allocation, parse_instance, parse_result, serialize_allocation,
                    serialize_instance, serialize_result)
from .typedp import bundle_bound, config_satisfies, solve_type_dp, type_profile

__all__ = [
    "Allocation", "BudgetExceeded", "EfxError", "FactorCosts", "GeneralCosts", "Instance",
    "InstanceError", "InternalInconsistency", "KernelMap", "PreconditionError", "SolveResult",
    "allocation_cost", "build_feasibility_frontier", "bundle_bound", "bundle_value",
    "config_satisfies", "efx_lower_bound", "efx_witness", "enumerate_efx", "factor_instance",
    "gen_factor_hardness", "gen_from_bin_packing", "gen_from_partition", "gen_gadget_factor",
    "gen_gadget_general", "gen_random", "gen_shift_equal_cardinality", "general_instance",
    "is_efx", "kernelize", "lift_allocation", "max_gap", "parse_allocation", "parse_instance",
    "parse_result", "serialize_allocation", "serialize_instance", "serialize_result",
    "solve_brute", "solve_singleton_matching", "solve_type_dp", "solve_value_vector_dp",
    "strongly_envies", "type_profile",
]
