"""Sharp moduli of uniform convexity of L^p and their Bellman-function certificates."""

from ._ucx import (
    Certificate,
    UcxError,
    boundary_profile,
    boundary_value,
    brute_force_B,
    certificate,
    contains,
    delta,
    delta_closed_form,
    delta_implicit,
    delta_via_s_star,
    envelope_slice,
    hanner_gap,
    moment,
    payoff,
    route,
    run,
    sharpness_check,
    solve_s_star,
    verify_appendix,
    witness_test,
)

__all__ = [
    "Certificate",
    "UcxError",
    "boundary_profile",
    "boundary_value",
    "brute_force_B",
    "certificate",
    "contains",
    "delta",
    "delta_closed_form",
    "delta_implicit",
    "delta_via_s_star",
    "envelope_slice",
    "hanner_gap",
    "moment",
    "payoff",
    "route",
    "run",
    "sharpness_check",
    "solve_s_star",
    "verify_appendix",
    "witness_test",
]
