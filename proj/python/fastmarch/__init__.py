"""Fast marching for the 2-D eikonal equation on the unit square.

Grids are (n+1, n+1) float64 arrays indexed [i, j] with x = i/n, y = j/n.
Sources are lists of (i, j) lattice indices.
"""

from ._core import (
    BucketWindowError,
    ComparisonHypothesisError,
    ErrorBoundViolation,
    OracleDivergenceError,
    check_comparison,
    error_report,
    fig1,
    fig2,
    hopf_lax,
    march,
    residual_range,
    solve_local,
    speed_field,
    sweep_oracle,
)

__all__ = [
    "BucketWindowError",
    "ComparisonHypothesisError",
    "ErrorBoundViolation",
    "OracleDivergenceError",
    "check_comparison",
    "error_report",
    "fig1",
    "fig2",
    "hopf_lax",
    "march",
    "residual_range",
    "solve_local",
    "speed_field",
    "sweep_oracle",
]
