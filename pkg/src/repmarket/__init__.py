"""Reputation-platform marketplace model.

Buyers on a two-sided platform decide whether to trust sellers based on a
noisy binary reputation signal; seller types evolve by payoff-biased
imitation; the platform chooses the signal accuracy and commission that
maximize its net profit. The package provides the closed-form market algebra,
the population dynamics and their equilibrium, platform profit and welfare
accounting, a finite-population stochastic simulation, and a CLI that emits
reproducible CSV/JSON artifacts.
"""

__version__ = "0.1.0"

from .abm import (
    QuasiStationarySummary,
    SimConfig,
    SimTrajectory,
    effective_sigma,
    fermi_switch_probability,
    quasi_stationary,
    run,
)
from .dynamics import (
    EquilibriumKind,
    EquilibriumResult,
    EventKind,
    FilippovValue,
    Trajectory,
    TrajectoryEvent,
    filippov_map,
    integrate,
    replicator_rhs,
    stable_equilibrium,
)
from .errors import (
    ConfigError,
    DegeneratePolicyError,
    EmptyWindowError,
    InfeasiblePointError,
    InvalidStepError,
    ModelError,
    UndefinedPosteriorError,
)
from .market import (
    THRESHOLD_TOL,
    MarketParams,
    SellerDistribution,
    SellerPayoffs,
    Signal,
    SignalPolicy,
    Thresholds,
    canonicalize,
    expected_buyer_payoff,
    payoff_difference,
    posterior_good,
    purchase_probability,
    seller_payoffs,
    thresholds,
)
from .platform_econ import (
    CostModel,
    Optimum,
    ProfitReport,
    beta_bar,
    hull_distance,
    optimize_signals,
    optimize_with_commission,
    profit,
    revenue,
    revenue_gradient,
    signal_cost,
)
from .welfare import WelfareGradients, WelfareReport, welfare, welfare_gradients

__all__ = [
    "THRESHOLD_TOL",
    "ConfigError",
    "CostModel",
    "DegeneratePolicyError",
    "EmptyWindowError",
    "EquilibriumKind",
    "EquilibriumResult",
    "EventKind",
    "FilippovValue",
    "InfeasiblePointError",
    "InvalidStepError",
    "MarketParams",
    "ModelError",
    "Optimum",
    "ProfitReport",
    "QuasiStationarySummary",
    "SellerDistribution",
    "SellerPayoffs",
    "Signal",
    "SignalPolicy",
    "SimConfig",
    "SimTrajectory",
    "Thresholds",
    "Trajectory",
    "TrajectoryEvent",
    "UndefinedPosteriorError",
    "WelfareGradients",
    "WelfareReport",
    "beta_bar",
    "canonicalize",
    "effective_sigma",
    "expected_buyer_payoff",
    "fermi_switch_probability",
    "filippov_map",
    "hull_distance",
    "integrate",
    "optimize_signals",
    "optimize_with_commission",
    "payoff_difference",
    "posterior_good",
    "profit",
    "purchase_probability",
    "quasi_stationary",
    "replicator_rhs",
    "revenue",
    "revenue_gradient",
    "run",
    "seller_payoffs",
    "signal_cost",
    "stable_equilibrium",
    "thresholds",
    "welfare",
    "welfare_gradients",
]
