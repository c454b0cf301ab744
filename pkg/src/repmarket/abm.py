"""Finite-population stochastic counterpart of the replicator dynamics.

Each period: active sellers are labeled independently (good sellers get the
favorable label with probability alpha, bad ones with probability beta);
every active seller receives a Poisson number of buyer visits; each visiting
buyer applies the threshold purchase rule at the current true fraction of
good sellers among active ones; sales pay the seller its margin and the
platform its commission. At the end of the period one uniformly chosen focal
seller compares its period-average per-sale payoff with that of a second,
distinct, uniformly chosen model seller and adopts the model's type with the
Fermi probability.

Sales tallies never feed back into the type dynamics, so the process is
simulated exactly in distribution with count-level draws. Randomness comes
from a single seeded ``numpy.random.Generator`` (PCG64) with a fixed draw
order per period: favorable-label counts for good then bad sellers
(binomial), total sales for good then bad sellers (Poisson-thinned by the
purchase probability), the focal and model picks, the focal's and model's own
label and sale draws, and finally the imitation coin. Identical config and
seed give bit-identical trajectories.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyWindowError
from .market import (
    MarketParams,
    SellerDistribution,
    Signal,
    SignalPolicy,
    purchase_probability,
    thresholds,
)

_GOOD, _BAD, _INACTIVE = 0, 1, 2


@dataclass(frozen=True)
class SimConfig:
    """Size, matching intensity, selection strength, and run length."""

    n_sellers: int
    lambda_per_seller: float
    sigma: float
    periods: int
    seed: int
    initial: SellerDistribution

    def __post_init__(self) -> None:
        if self.n_sellers < 2:
            raise ValueError(f"n_sellers must be at least 2, got {self.n_sellers}")
        if self.lambda_per_seller <= 0.0:
            raise ValueError(
                f"lambda_per_seller must be positive, got {self.lambda_per_seller}"
            )
        if self.sigma < 0.0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma}")
        if self.periods < 1:
            raise ValueError(f"periods must be positive, got {self.periods}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")

    def initial_counts(self) -> tuple[int, int, int]:
        """Largest-remainder rounding of the initial shares to seller counts."""
        shares = (self.initial.x_good, self.initial.x_bad, self.initial.x_inactive)
        raw = [s * self.n_sellers for s in shares]
        counts = [int(math.floor(v)) for v in raw]
        remainders = [v - c for v, c in zip(raw, counts)]
        for _ in range(self.n_sellers - sum(counts)):
            i = max(range(3), key=lambda j: (remainders[j], -j))
            counts[i] += 1
            remainders[i] = -1.0
        return counts[0], counts[1], counts[2]


@dataclass
class SimTrajectory:
    """Per-period records of one run; ``xi`` is NaN when nobody is active."""

    n_good: np.ndarray
    n_bad: np.ndarray
    n_inactive: np.ndarray
    xi: np.ndarray
    sales_good: np.ndarray
    sales_bad: np.ndarray
    revenue: np.ndarray

    @property
    def periods(self) -> int:
        return len(self.n_good)


@dataclass(frozen=True)
class QuasiStationarySummary:
    """Late-run statistics of xi over the final quarter of the periods."""

    mode_xi: float
    histogram: np.ndarray
    window: tuple[int, int]
    extinct_good: bool


def fermi_switch_probability(pi_focal: float, pi_other: float, sigma: float) -> float:
    """Probability the focal seller adopts the other seller's type.

    Decreasing in the focal's payoff advantage; 1/2 at equal payoffs or at
    zero selection strength.
    """
    if sigma < 0.0:
        raise ValueError(f"sigma must be nonnegative, got {sigma}")
    z = sigma * (pi_focal - pi_other)
    if z >= 0.0:
        ez = math.exp(-z)
        return ez / (1.0 + ez)
    return 1.0 / (1.0 + math.exp(z))


def effective_sigma(sigma: float, lambda_per_seller: float) -> float:
    """Selection strength rescaled for the chance a seller made no sale.

    Maps the simulation's selection strength onto the deterministic-limit
    timescale; vanishing only-by-luck sales inflate the rescaling at small
    visit rates.
    """
    if lambda_per_seller <= 0.0:
        raise ValueError(f"lambda_per_seller must be positive, got {lambda_per_seller}")
    return sigma / (1.0 - math.exp(-lambda_per_seller))


def run(config: SimConfig, params: MarketParams, policy: SignalPolicy) -> SimTrajectory:
    """Simulate the per-period market and imitation process."""
    n = config.n_sellers
    counts = list(config.initial_counts())
    rng = np.random.default_rng(config.seed)
    th = thresholds(params, policy)
    lam = config.lambda_per_seller
    margins = (params.r - params.c, 1.0 - params.c, 0.0)
    label_rates = (policy.alpha, policy.beta, 0.0)

    periods = config.periods
    out_good = np.empty(periods, dtype=np.int64)
    out_bad = np.empty(periods, dtype=np.int64)
    out_inactive = np.empty(periods, dtype=np.int64)
    out_xi = np.empty(periods, dtype=np.float64)
    out_sales_good = np.empty(periods, dtype=np.int64)
    out_sales_bad = np.empty(periods, dtype=np.int64)
    out_revenue = np.empty(periods, dtype=np.float64)

    binomial = rng.binomial
    poisson = rng.poisson
    uniform = rng.random

    for t in range(periods):
        n_g, n_b, n_i = counts
        n_active = n_g + n_b
        xi = n_g / n_active if n_active > 0 else math.nan
        if n_active > 0:
            p_ghat = purchase_probability(Signal.GOOD, xi, th)
            p_bhat = purchase_probability(Signal.BAD, xi, th)
        else:
            p_ghat = p_bhat = 0.0

        # Favorable-label counts per type, then per-type sales totals: each
        # seller's sale count is a Poisson visit stream thinned by its label's
        # purchase probability, so class totals are Poisson as well.
        g_hat = int(binomial(n_g, policy.alpha))
        b_hat = int(binomial(n_b, policy.beta))
        sales_good = int(poisson(lam * (g_hat * p_ghat + (n_g - g_hat) * p_bhat)))
        sales_bad = int(poisson(lam * (b_hat * p_ghat + (n_b - b_hat) * p_bhat)))

        # Focal/model pick, uniform without replacement over all sellers.
        focal_type = _pick_type(uniform(), counts, n)
        remaining = list(counts)
        remaining[focal_type] -= 1
        model_type = _pick_type(uniform(), remaining, n - 1)

        pi_focal = _period_payoff(
            focal_type, uniform(), uniform(), label_rates, margins, p_ghat, p_bhat, lam
        )
        pi_model = _period_payoff(
            model_type, uniform(), uniform(), label_rates, margins, p_ghat, p_bhat, lam
        )
        switch_u = uniform()

        out_good[t] = n_g
        out_bad[t] = n_b
        out_inactive[t] = n_i
        out_xi[t] = xi
        out_sales_good[t] = sales_good
        out_sales_bad[t] = sales_bad
        out_revenue[t] = params.c * (sales_good + sales_bad)

        if switch_u < fermi_switch_probability(pi_focal, pi_model, config.sigma):
            counts[focal_type] -= 1
            counts[model_type] += 1

    return SimTrajectory(
        n_good=out_good,
        n_bad=out_bad,
        n_inactive=out_inactive,
        xi=out_xi,
        sales_good=out_sales_good,
        sales_bad=out_sales_bad,
        revenue=out_revenue,
    )


def _pick_type(u: float, counts, total: int) -> int:
    """Map a uniform draw to a seller type under the given counts."""
    edge_good = counts[_GOOD] / total
    if u < edge_good:
        return _GOOD
    if u < edge_good + counts[_BAD] / total:
        return _BAD
    return _INACTIVE


def _period_payoff(
    seller_type: int,
    label_u: float,
    sale_u: float,
    label_rates,
    margins,
    p_ghat: float,
    p_bhat: float,
    lam: float,
) -> float:
    """Period-average per-sale payoff of one seller: the type's margin if it
    made at least one sale, else 0."""
    if seller_type == _INACTIVE:
        return 0.0
    p_buy = p_ghat if label_u < label_rates[seller_type] else p_bhat
    if p_buy <= 0.0:
        return 0.0
    sold = sale_u < -math.expm1(-p_buy * lam)
    return margins[seller_type] if sold else 0.0


def quasi_stationary(traj: SimTrajectory, bins: int) -> QuasiStationarySummary:
    """Histogram of xi over the last quarter of the run and its modal value.

    Periods with no active sellers are skipped; the mode is the midpoint of a
    maximal-count bin, ties broken toward the lower bin.
    """
    if bins < 1:
        raise ValueError(f"bins must be positive, got {bins}")
    periods = traj.periods
    window_len = periods // 4
    start = periods - window_len
    window_xi = traj.xi[start:]
    window_xi = window_xi[~np.isnan(window_xi)]
    if window_xi.size == 0:
        raise EmptyWindowError(
            f"no active-seller periods in the summary window [{start}, {periods})"
        )
    counts, edges = np.histogram(window_xi, bins=bins, range=(0.0, 1.0))
    mode_bin = int(np.argmax(counts))
    mode_xi = 0.5 * (edges[mode_bin] + edges[mode_bin + 1])
    return QuasiStationarySummary(
        mode_xi=float(mode_xi),
        histogram=counts,
        window=(start, periods),
        extinct_good=bool(traj.n_good[-1] == 0),
    )
