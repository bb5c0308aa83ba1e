"""Python bindings for the cmopbench C++ core."""

from cmopbench._core import (
    AnytimeIndicator,
    BenchError,
    __version__,
    delta_pair,
    derive_seed,
    distance_to_roi,
    evaluate,
    extract_runtimes,
    hypervolume,
    indicator_mop,
    list_problems,
    normalize_objectives,
    overall_violation,
    problem_meta,
    run,
    targets_for,
)

__all__ = [
    "AnytimeIndicator",
    "BenchError",
    "__version__",
    "delta_pair",
    "derive_seed",
    "distance_to_roi",
    "evaluate",
    "extract_runtimes",
    "hypervolume",
    "indicator_mop",
    "list_problems",
    "normalize_objectives",
    "overall_violation",
    "problem_meta",
    "run",
    "targets_for",
]
