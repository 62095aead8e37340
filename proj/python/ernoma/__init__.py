"""Delay-constrained effective rates of NOMA underlay spectrum sharing.

Thin wrapper over the C++ core. The main entry points are the per-pair rate
evaluators (closed form, quadrature, Monte Carlo), the OMA baseline, the
bisection power allocation and the sweep driver.
"""

from _ernoma import (  # noqa: F401
    AccuracyError,
    ConfigError,
    LinkStats,
    PairStats,
    PathLossParams,
    PowerSplit,
    ScenarioParams,
    er_closed,
    er_from_moment,
    er_monte_carlo,
    er_quadrature,
    match_strong_user,
    meijer_g,
    oma_effective_rate,
    pair_users,
    path_loss_linear,
    run_sweep,
    transmit_power_instantaneous,
    transmit_power_statistical,
)

__all__ = [
    "AccuracyError",
    "ConfigError",
    "LinkStats",
    "PairStats",
    "PathLossParams",
    "PowerSplit",
    "ScenarioParams",
    "er_closed",
    "er_from_moment",
    "er_monte_carlo",
    "er_quadrature",
    "match_strong_user",
    "meijer_g",
    "oma_effective_rate",
    "pair_users",
    "path_loss_linear",
    "run_sweep",
    "transmit_power_instantaneous",
    "transmit_power_statistical",
]
