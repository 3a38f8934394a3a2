"""Python access to the bound-preserving DDG solvers."""

from ._core import (
    ConfigError,
    ProblemOptions,
    RunConfig,
    alpha_coeffs,
    barenblatt,
    convergence_study,
    lambda0_unit_weight,
    mu0_convdiff_unit_weight,
    problem_names,
    run,
)


def solve(problem="heat_weighted_1d", **options):
    """Run one problem; keyword arguments set RunConfig fields of the same name."""
    config = RunConfig()
    config.problem = problem
    for key, value in options.items():
        if not hasattr(config, key):
            raise TypeError(f"unknown option {key!r}")
        setattr(config, key, value)
    return run(config)


__all__ = [
    "ConfigError",
    "ProblemOptions",
    "RunConfig",
    "alpha_coeffs",
    "barenblatt",
    "convergence_study",
    "lambda0_unit_weight",
    "mu0_convdiff_unit_weight",
    "problem_names",
    "run",
    "solve",
]
