"""Static market algebra: buyer inference and per-transaction seller payoffs.

A platform labels each active seller with a binary reputation signal. Buyers
observe the label, form a Bayesian belief that the seller is trustworthy, and
purchase when the expected payoff is positive (fair coin at exactly zero).
Because the expected payoff is monotone in the share ``xi`` of good sellers
among active ones, the buyer rule reduces to comparing ``xi`` against one
purchase threshold per signal, and seller payoffs become step functions of
``xi`` with half-weight values exactly on a threshold.

Everything here is a pure function of its arguments and safe to call from
concurrent workers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DegeneratePolicyError, UndefinedPosteriorError

#: |xi - threshold| at or below this counts as sitting exactly on a purchase
#: threshold, so the coin-flip rule fires reproducibly at the analytic
#: equilibrium instead of depending on floating-point luck.
THRESHOLD_TOL = 1e-12


class Signal(enum.Enum):
    """Reputation label shown to buyers (not the seller's true type)."""

    GOOD = "good"
    BAD = "bad"


@dataclass(frozen=True)
class MarketParams:
    """Economic primitives of the marketplace.

    ``r`` is the payoff both parties receive from a good-faith sale; a sale by
    an untrustworthy seller pays the seller 1 and the buyer -1. ``c`` is the
    per-sale commission the seller pays the platform.
    """

    r: float
    c: float

    def __post_init__(self) -> None:
        if not 0.0 < self.r < 1.0:
            raise ValueError(f"r must lie strictly in (0, 1), got {self.r}")
        if self.c < 0.0:
            raise ValueError(f"c must be nonnegative, got {self.c}")


@dataclass(frozen=True)
class SignalPolicy:
    """Operating point of the reputation system.

    ``alpha`` is the probability a good seller is labeled GOOD (true-positive
    rate); ``beta`` is the probability a bad seller is labeled GOOD
    (false-positive rate).
    """

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")


@dataclass(frozen=True)
class SellerDistribution:
    """Population shares of good, bad, and inactive sellers (a 2-simplex point)."""

    x_good: float
    x_bad: float
    x_inactive: float

    def __post_init__(self) -> None:
        for name, value in (
            ("x_good", self.x_good),
            ("x_bad", self.x_bad),
            ("x_inactive", self.x_inactive),
        ):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        total = self.x_good + self.x_bad + self.x_inactive
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"shares must sum to 1 within 1e-12, got {total!r}")

    @property
    def active_share(self) -> float:
        return self.x_good + self.x_bad

    @property
    def xi(self) -> float | None:
        """Fraction of good sellers among active ones; None if nobody is active."""
        active = self.active_share
        if active <= 0.0:
            return None
        return self.x_good / active


@dataclass(frozen=True)
class Thresholds:
    """Minimum ``xi`` at which a buyer purchases after each signal."""

    xi_ghat: float
    xi_bhat: float


@dataclass(frozen=True)
class SellerPayoffs:
    """Expected per-transaction payoffs by seller type."""

    pi_good: float
    pi_bad: float
    pi_inactive: float = 0.0


def canonicalize(policy: SignalPolicy) -> tuple[SignalPolicy, bool]:
    """Return an equivalent policy with alpha >= beta, plus a flipped flag.

    Signal labels are arbitrary, so (alpha, beta) and (1-alpha, 1-beta)
    describe the same reputation system with the labels swapped. Ties keep the
    original orientation so sweeps stay reproducible.
    """
    if policy.alpha >= policy.beta:
        return policy, False
    return SignalPolicy(1.0 - policy.alpha, 1.0 - policy.beta), True


def _signal_probability(signal: Signal, policy: SignalPolicy, xi: float) -> float:
    if signal is Signal.GOOD:
        return policy.alpha * xi + policy.beta * (1.0 - xi)
    return (1.0 - policy.alpha) * xi + (1.0 - policy.beta) * (1.0 - xi)


def posterior_good(signal: Signal, policy: SignalPolicy, xi: float) -> float:
    """Bayes posterior that the seller is good given the observed signal.

    Raises UndefinedPosteriorError when the signal has probability zero under
    (policy, xi), e.g. the BAD label with alpha = 1 and xi = 1.
    """
    if not 0.0 <= xi <= 1.0:
        raise ValueError(f"xi must lie in [0, 1], got {xi}")
    marginal = _signal_probability(signal, policy, xi)
    if marginal <= 0.0:
        raise UndefinedPosteriorError(
            f"signal {signal.value!r} has probability zero at xi={xi}"
        )
    likelihood = policy.alpha if signal is Signal.GOOD else 1.0 - policy.alpha
    post = likelihood * xi / marginal
    return min(max(post, 0.0), 1.0)


def expected_buyer_payoff(
    signal: Signal, params: MarketParams, policy: SignalPolicy, xi: float
) -> float:
    """Expected buyer payoff from purchasing, conditional on the signal."""
    post = posterior_good(signal, policy, xi)
    return (1.0 + params.r) * post - 1.0


def thresholds(params: MarketParams, policy: SignalPolicy) -> Thresholds:
    """Purchase thresholds for both signals.

    The threshold for a signal is the ``xi`` at which a buyer observing that
    signal is exactly indifferent. Undefined for the corner policies (0, 0)
    and (1, 1) where one signal never occurs.
    """
    den_ghat = params.r * policy.alpha + policy.beta
    den_bhat = params.r * (1.0 - policy.alpha) + (1.0 - policy.beta)
    if den_ghat <= 0.0 or den_bhat <= 0.0:
        raise DegeneratePolicyError(
            f"policy (alpha={policy.alpha}, beta={policy.beta}) emits only one signal"
        )
    return Thresholds(
        xi_ghat=policy.beta / den_ghat,
        xi_bhat=(1.0 - policy.beta) / den_bhat,
    )


def purchase_probability(signal: Signal, xi: float, th: Thresholds) -> float:
    """Probability a buyer purchases after the signal: 0, 1/2, or 1."""
    theta = th.xi_ghat if signal is Signal.GOOD else th.xi_bhat
    gap = xi - theta
    if -THRESHOLD_TOL <= gap <= THRESHOLD_TOL:
        return 0.5
    return 1.0 if gap > 0.0 else 0.0


def seller_payoffs(
    params: MarketParams, policy: SignalPolicy, xi: float
) -> SellerPayoffs:
    """Expected per-transaction payoffs of good and bad sellers at ``xi``.

    Assembled from the two signal-conditional sale probabilities, which
    reproduces the piecewise tables for either ordering of alpha and beta,
    including the half-weight rows exactly on a threshold.
    """
    th = thresholds(params, policy)
    p_ghat = purchase_probability(Signal.GOOD, xi, th)
    p_bhat = purchase_probability(Signal.BAD, xi, th)
    sale_rate_good = policy.alpha * p_ghat + (1.0 - policy.alpha) * p_bhat
    sale_rate_bad = policy.beta * p_ghat + (1.0 - policy.beta) * p_bhat
    return SellerPayoffs(
        pi_good=(params.r - params.c) * sale_rate_good,
        pi_bad=(1.0 - params.c) * sale_rate_bad,
    )


def payoff_difference(params: MarketParams, policy: SignalPolicy, xi: float) -> float:
    """Good-minus-bad expected payoff; its sign drives the population flow."""
    payoffs = seller_payoffs(params, policy, xi)
    return payoffs.pi_good - payoffs.pi_bad
