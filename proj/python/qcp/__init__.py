"""Bounds, adaptive strategies, and optimal testers for quantum change-point
identification.

The heavy lifting lives in the C++ extension ``qcp._core``; this package
re-exports its public surface.
"""

from ._core import (
    AdaptiveSchedule,
    GramModel,
    TesterCertificate,
    TradeoffCurve,
    ValidationError,
    VerificationError,
    analyze_unitary_pair,
    build_povm,
    certify_unitary,
    construct_tester,
    distance_to_polygon,
    dp_oracle,
    evaluate_tester,
    forward_check,
    gram_model,
    make_pure_state_curve,
    make_tabulated_curve,
    make_unitary_curve,
    optimize_schedule,
    oscillation_check,
    run_bounds,
    run_certify,
    run_simulate,
    run_sweep,
    simulate_schedule,
    maximizer_diagnostics,
    upper_bound,
    upper_bound_unitary,
    verify_gram_certificate,
    verify_nu_condition,
    xi,
)

__all__ = [
    "AdaptiveSchedule",
    "GramModel",
    "TesterCertificate",
    "TradeoffCurve",
    "ValidationError",
    "VerificationError",
    "analyze_unitary_pair",
    "build_povm",
    "certify_unitary",
    "construct_tester",
    "distance_to_polygon",
    "dp_oracle",
    "evaluate_tester",
    "forward_check",
    "gram_model",
    "make_pure_state_curve",
    "make_tabulated_curve",
    "make_unitary_curve",
    "optimize_schedule",
    "oscillation_check",
    "run_bounds",
    "run_certify",
    "run_simulate",
    "run_sweep",
    "simulate_schedule",
    "maximizer_diagnostics",
    "upper_bound",
    "upper_bound_unitary",
    "verify_gram_certificate",
    "verify_nu_condition",
    "xi",
]

__version__ = "0.1.0"
