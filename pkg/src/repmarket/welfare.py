"""Participant welfare at the long-run market equilibrium.

All quantities are evaluated at the interior coexistence point, where buyers
observing the unfavorable label are exactly indifferent (they purchase with
probability 1/2) and buyers observing the favorable label always purchase.
When no interior equilibrium exists the market collapses and every utility is
zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import EquilibriumKind, EquilibriumResult, stable_equilibrium
from .errors import InfeasiblePointError
from .market import MarketParams, SignalPolicy, canonicalize


@dataclass(frozen=True)
class WelfareReport:
    """Average payoffs per platform visit/transaction at equilibrium.

    ``u_seller`` decomposes exactly as ``u_good_seller`` plus the bad sellers'
    population-weighted payoff.
    """

    u_buyer: float
    u_seller: float
    u_good_seller: float
    equilibrium: EquilibriumResult


@dataclass(frozen=True)
class WelfareGradients:
    """Closed-form partial derivatives of the three utilities in (alpha, beta)."""

    du_buyer_dalpha: float
    du_buyer_dbeta: float
    du_seller_dalpha: float
    du_seller_dbeta: float
    du_good_seller_dalpha: float
    du_good_seller_dbeta: float


def welfare(params: MarketParams, policy: SignalPolicy) -> WelfareReport:
    """Buyer, aggregate-seller, and good-seller utility at equilibrium."""
    eq = stable_equilibrium(params, policy)
    if eq.kind is EquilibriumKind.NO_TRADE:
        return WelfareReport(0.0, 0.0, 0.0, eq)

    canon, _ = canonicalize(policy)
    a, b = canon.alpha, canon.beta
    r, c = params.r, params.c
    xi_star = eq.xi_star
    assert xi_star is not None

    # Equilibrium per-transaction payoffs: every seller sells on the favorable
    # label and wins the coin flip half the time on the unfavorable one.
    pi_good_eq = 0.5 * (1.0 + a) * (r - c)
    pi_bad_eq = 0.5 * (1.0 + b) * (1.0 - c)
    u_good = xi_star * pi_good_eq
    u_seller = u_good + (1.0 - xi_star) * pi_bad_eq
    u_buyer = 0.5 * (1.0 + a) * xi_star * r - 0.5 * (1.0 + b) * (1.0 - xi_star)
    return WelfareReport(u_buyer, u_seller, u_good, eq)


def welfare_gradients(params: MarketParams, policy: SignalPolicy) -> WelfareGradients:
    """Partial derivatives of the equilibrium utilities.

    Requires alpha >= beta and an interior equilibrium; raises
    InfeasiblePointError otherwise.
    """
    if policy.alpha < policy.beta:
        raise ValueError("welfare_gradients requires alpha >= beta")
    eq = stable_equilibrium(params, policy)
    if eq.kind is not EquilibriumKind.INTERIOR_COEXISTENCE:
        raise InfeasiblePointError(
            "no interior equilibrium: "
            f"{eq.condition_lhs} <= {eq.condition_rhs} at alpha={policy.alpha}, beta={policy.beta}"
        )
    a, b = policy.alpha, policy.beta
    r, c = params.r, params.c
    den = r * (1.0 - a) + (1.0 - b)
    den2 = den * den
    return WelfareGradients(
        du_buyer_dalpha=(1.0 - b) * r * (1.0 + r) / den2,
        du_buyer_dbeta=-(1.0 - a) * r * (1.0 + r) / den2,
        du_seller_dalpha=-(1.0 - b)
        * ((1.0 - b) * c * (1.0 + r) - 2.0 * r * (r - b))
        / (2.0 * den2),
        du_seller_dbeta=(1.0 - a)
        * r
        * (2.0 * (1.0 - a * r) - (1.0 - a) * c * (1.0 + r))
        / (2.0 * den2),
        du_good_seller_dalpha=(1.0 - b) * (1.0 - b + 2.0 * r) * (r - c) / (2.0 * den2),
        du_good_seller_dbeta=-(1.0 - a) * (1.0 + a) * r * (r - c) / (2.0 * den2),
    )
