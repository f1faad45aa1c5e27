"""Scripted-scenario harness: deterministic runs and learning-log statistics."""

from tutorkit.harness.scenario import (
    RunResult,
    Scenario,
    build_scripted_gateway,
    run_scenario,
)
from tutorkit.harness.stats import (
    RunStats,
    compare_variants,
    compute_stats,
    format_stats,
)

__all__ = [
    "RunResult",
    "RunStats",
    "Scenario",
    "build_scripted_gateway",
    "compare_variants",
    "compute_stats",
    "format_stats",
    "run_scenario",
]
