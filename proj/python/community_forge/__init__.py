"""Covering equilibria of interval information communities.

Thin wrapper over the C++ core. Every call is deterministic; construction
and verification release the GIL where they run long.
"""

from ._core import (
    Arc,
    BalanceIntegrityError,
    CommunityStructure,
    ConstructionError,
    GlobalParams,
    KernelFamily,
    KernelSpec,
    KernelValidationError,
    NumericsConfig,
    build_structure,
    construct_covering,
    demand_at,
    expert_routing_plan,
    feasibility_check,
    max_interval_length,
    optimal_filter_agent,
    partition_ring,
    threshold_filter_totals,
    torus_distance,
    verify_nash,
)

__all__ = [
    "Arc",
    "BalanceIntegrityError",
    "CommunityStructure",
    "ConstructionError",
    "GlobalParams",
    "KernelFamily",
    "KernelSpec",
    "KernelValidationError",
    "NumericsConfig",
    "build_structure",
    "canonical_params",
    "construct_covering",
    "demand_at",
    "expert_routing_plan",
    "feasibility_check",
    "max_interval_length",
    "optimal_filter_agent",
    "partition_ring",
    "threshold_filter_totals",
    "torus_distance",
    "verify_nash",
]


def canonical_params(c: float = 0.05) -> GlobalParams:
    """L = 1, gaussian interest (1, 0.3), quadratic-bump ability (0.9, 0.25)."""
    return GlobalParams(
        L=1.0,
        c=c,
        E_p=1.0,
        E_q=1.0,
        f=KernelSpec("gaussian", 1.0, 0.3),
        g=KernelSpec("quadratic_bump", 0.9, 0.25),
    )
