"""Seller-type dynamics on the 2-simplex and their long-run equilibrium.

Types spread by payoff-biased imitation, so shares follow replicator dynamics
driven by the step-function payoffs from :mod:`repmarket.market`. The induced
share of good sellers among active ones, ``xi``, obeys a one-dimensional
piecewise-logistic law whose right-hand side jumps at the two purchase
thresholds; solutions are therefore taken in the Filippov sense, with a sliding
segment at the upper threshold acting as the stable equilibrium whenever good
sellers hold a payoff edge there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import DegeneratePolicyError, InvalidStepError
from .market import (
    THRESHOLD_TOL,
    MarketParams,
    SellerDistribution,
    SignalPolicy,
    Thresholds,
    canonicalize,
    seller_payoffs,
    thresholds,
)

#: Bisection width (in time units) used to localize a threshold crossing.
_EVENT_TIME_TOL = 1e-10
#: Early-stop rule: this many consecutive steps with sup-norm rate below
#: _QUIET_RATE counts as convergence.
_QUIET_RATE = 1e-10
_QUIET_STEPS = 100


class EquilibriumKind(enum.Enum):
    INTERIOR_COEXISTENCE = "interior-coexistence"
    NO_TRADE = "no-trade"


class EventKind(enum.Enum):
    HIT_XI_GHAT = "hit-xi-ghat"
    HIT_XI_BHAT = "hit-xi-bhat"
    SLIDING_START = "sliding-start"
    ABSORBED_NO_TRADE = "absorbed-no-trade"


@dataclass(frozen=True)
class FilippovValue:
    """Closed interval of admissible rates for xi; a singleton off the thresholds."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"interval bounds out of order: {self.lower} > {self.upper}")

    @property
    def is_singleton(self) -> bool:
        return self.lower == self.upper

    def contains(self, value: float, tol: float = 0.0) -> bool:
        return self.lower - tol <= value <= self.upper + tol


@dataclass(frozen=True)
class TrajectoryEvent:
    time: float
    kind: EventKind


@dataclass
class Trajectory:
    """Time-stamped states of one integration run, plus detected events."""

    times: list[float] = field(default_factory=list)
    states: list[SellerDistribution] = field(default_factory=list)
    events: list[TrajectoryEvent] = field(default_factory=list)
    converged: bool = False


@dataclass(frozen=True)
class EquilibriumResult:
    """Classification of the long-run outcome for given params and policy.

    ``condition_lhs``/``condition_rhs`` are the two sides of the coexistence
    condition alpha*(r-c) > beta*(1-c), evaluated after canonicalization.
    ``thresholds`` is None only for the degenerate corner policies whose
    thresholds are undefined (those are always NO_TRADE).
    """

    kind: EquilibriumKind
    xi_star: float | None
    thresholds: Thresholds | None
    condition_lhs: float
    condition_rhs: float


def stable_equilibrium(params: MarketParams, policy: SignalPolicy) -> EquilibriumResult:
    """Classify the unique attractor: interior coexistence or market collapse."""
    canon, _ = canonicalize(policy)
    lhs = canon.alpha * (params.r - params.c)
    rhs = canon.beta * (1.0 - params.c)
    try:
        th = thresholds(params, canon)
    except DegeneratePolicyError:
        th = None
    if th is not None and lhs > rhs:
        return EquilibriumResult(
            kind=EquilibriumKind.INTERIOR_COEXISTENCE,
            xi_star=th.xi_bhat,
            thresholds=th,
            condition_lhs=lhs,
            condition_rhs=rhs,
        )
    return EquilibriumResult(
        kind=EquilibriumKind.NO_TRADE,
        xi_star=None,
        thresholds=th,
        condition_lhs=lhs,
        condition_rhs=rhs,
    )


def replicator_rhs(
    state: SellerDistribution, params: MarketParams, policy: SignalPolicy
) -> tuple[float, float]:
    """Growth rates (dx_good, dx_inactive); the bad share follows from the simplex.

    On the measure-zero sets where a posterior is undefined (alpha = 1 with
    xi = 1, or beta = 1 with xi = 0) the field is patched so the undefined
    payoff never enters; the patched values agree with the generic formula for
    any finite substitute payoff.
    """
    x_g, x_i = state.x_good, state.x_inactive
    x_b = state.x_bad
    active = x_g + x_b
    if active <= 0.0:
        return 0.0, 0.0
    xi = x_g / active

    if policy.alpha == 1.0 and x_b == 0.0:
        pi_good = seller_payoffs(params, policy, 1.0).pi_good
        return x_g * (1.0 - x_g) * pi_good, -x_i * x_g * pi_good
    if policy.beta == 1.0 and x_g == 0.0:
        pi_bad = seller_payoffs(params, policy, 0.0).pi_bad
        return 0.0, -x_i * x_b * pi_bad

    payoffs = seller_payoffs(params, policy, xi)
    pi_g, pi_b = payoffs.pi_good, payoffs.pi_bad
    dx_good = x_g * ((1.0 - x_g) * (pi_g - pi_b) + x_i * pi_b)
    dx_inactive = -x_i * (x_g * pi_g + x_b * pi_b)
    return dx_good, dx_inactive


def filippov_map(xi: float, params: MarketParams, policy: SignalPolicy) -> FilippovValue:
    """Admissible rates of xi on the active edge (x_inactive = 0).

    Requires a canonical policy (alpha >= beta). Off the thresholds the value
    is the singleton one-sided limit; on a threshold it is the closed interval
    spanned by the two adjacent branches, which contains 0 exactly where the
    state can rest.
    """
    if policy.alpha < policy.beta:
        raise ValueError("filippov_map requires a canonical policy (alpha >= beta)")
    th = thresholds(params, policy)
    r, c = params.r, params.c
    g = xi * (1.0 - xi)
    rate_high = g * (r - 1.0)
    rate_mid = g * (policy.alpha * (r - c) - policy.beta * (1.0 - c))

    at_bhat = abs(xi - th.xi_bhat) <= THRESHOLD_TOL
    at_ghat = abs(xi - th.xi_ghat) <= THRESHOLD_TOL
    if at_bhat and at_ghat:
        values = (rate_high, rate_mid, 0.0)
        return FilippovValue(min(values), max(values))
    if at_bhat:
        return FilippovValue(min(rate_high, rate_mid), max(rate_high, rate_mid))
    if at_ghat:
        return FilippovValue(min(0.0, rate_mid), max(0.0, rate_mid))
    if xi > th.xi_bhat:
        return FilippovValue(rate_high, rate_high)
    if xi > th.xi_ghat:
        return FilippovValue(rate_mid, rate_mid)
    return FilippovValue(0.0, 0.0)


_REGION_BELOW, _REGION_MID, _REGION_ABOVE = 0, 1, 2
_AT_GHAT, _AT_BHAT = "at_ghat", "at_bhat"


class _BranchFlow:
    """Replicator flow with one branch's payoffs frozen.

    Between the purchase thresholds the payoffs are constants, so the flow is
    smooth region by region. The integrator steps within one region at a time
    and switches (or starts sliding) exactly on a threshold; letting RK4
    sample across a discontinuity would stall the state just short of it.
    """

    def __init__(self, params: MarketParams, policy: SignalPolicy):
        th = thresholds(params, policy)
        self.xi_ghat, self.xi_bhat = th.xi_ghat, th.xi_bhat
        margin_good, margin_bad = params.r - params.c, 1.0 - params.c
        self.payoffs = {
            _REGION_BELOW: (0.0, 0.0),
            _REGION_MID: (policy.alpha * margin_good, policy.beta * margin_bad),
            _REGION_ABOVE: (margin_good, margin_bad),
        }

    def rates(self, region: int, x_g: float, x_i: float) -> tuple[float, float]:
        pi_g, pi_b = self.payoffs[region]
        x_b = 1.0 - x_g - x_i
        dx_g = x_g * ((1.0 - x_g) * (pi_g - pi_b) + x_i * pi_b)
        dx_i = -x_i * (x_g * pi_g + x_b * pi_b)
        return dx_g, dx_i

    def rk4(self, region: int, x_g: float, x_i: float, h: float) -> tuple[float, float]:
        k1g, k1i = self.rates(region, x_g, x_i)
        k2g, k2i = self.rates(region, x_g + 0.5 * h * k1g, x_i + 0.5 * h * k1i)
        k3g, k3i = self.rates(region, x_g + 0.5 * h * k2g, x_i + 0.5 * h * k2i)
        k4g, k4i = self.rates(region, x_g + h * k3g, x_i + h * k3i)
        ng = x_g + h * (k1g + 2.0 * k2g + 2.0 * k3g + k4g) / 6.0
        ni = x_i + h * (k1i + 2.0 * k2i + 2.0 * k3i + k4i) / 6.0
        ni = min(max(ni, 0.0), 1.0)
        ng = min(max(ng, 0.0), 1.0 - ni)
        return ng, ni


def _xi_of(x_g: float, x_i: float) -> float | None:
    active = 1.0 - x_i
    if active <= 0.0:
        return None
    return min(max(x_g / active, 0.0), 1.0)


def integrate(
    initial: SellerDistribution,
    params: MarketParams,
    policy: SignalPolicy,
    horizon: float,
    step: float = 1e-2,
) -> Trajectory:
    """Integrate the seller-share dynamics with fixed-step RK4.

    The payoff field is constant within each region delimited by the purchase
    thresholds, so steps are taken with the current region's payoffs frozen;
    threshold crossings are localized by bisection on the step length (to
    1e-10 in time), recorded as events, and the state is snapped onto the
    threshold. When xi reaches the upper threshold while the adjacent branch
    fields point toward it from both sides, the trajectory enters a sliding
    segment: xi stays pinned there while the inactive share keeps decaying
    under the tangency-selected convex combination of the two branch fields.
    Integration stops early, with ``converged`` set, after 100 consecutive
    steps of sup-norm rate below 1e-10.
    """
    if step <= 0.0:
        raise InvalidStepError(f"step must be positive, got {step}")
    if horizon < 0.0:
        raise InvalidStepError(f"horizon must be nonnegative, got {horizon}")

    canon, _ = canonicalize(policy)
    flow = _BranchFlow(params, canon)
    xi_ghat, xi_bhat = flow.xi_ghat, flow.xi_bhat
    mid_rate = canon.alpha * (params.r - params.c) - canon.beta * (1.0 - params.c)
    can_slide = mid_rate > 0.0

    # Tangency-selected sliding combination of the branches adjacent to the
    # upper threshold; lam zeroes the xi-rate, and the same weights give the
    # decay rate of the inactive share on the sliding segment.
    slide_decay = 0.0
    if can_slide:
        lam = mid_rate / (mid_rate + (1.0 - params.r))
        pi_g_slide = (params.r - params.c) * (lam + (1.0 - lam) * canon.alpha)
        pi_b_slide = (1.0 - params.c) * (lam + (1.0 - lam) * canon.beta)
        slide_decay = xi_bhat * pi_g_slide + (1.0 - xi_bhat) * pi_b_slide

    traj = Trajectory()
    x_g, x_i = initial.x_good, initial.x_inactive
    t = 0.0
    sliding = False
    quiet = 0
    seen_events: set[EventKind] = set()

    def record_state() -> None:
        x_b = max(1.0 - x_g - x_i, 0.0)
        traj.times.append(t)
        traj.states.append(SellerDistribution(x_g, x_b, x_i))

    def record_event(kind: EventKind) -> None:
        if kind not in seen_events:
            seen_events.add(kind)
            traj.events.append(TrajectoryEvent(t, kind))

    def classify(xi: float):
        if abs(xi - xi_bhat) <= THRESHOLD_TOL:
            return _AT_BHAT
        if abs(xi - xi_ghat) <= THRESHOLD_TOL:
            return _AT_GHAT
        if xi > xi_bhat:
            return _REGION_ABOVE
        if xi > xi_ghat:
            return _REGION_MID
        return _REGION_BELOW

    record_state()

    while t < horizon - 1e-12:
        h = min(step, horizon - t)

        if not sliding:
            xi = _xi_of(x_g, x_i)
            if xi is None:
                region = _REGION_BELOW
            else:
                location = classify(xi)
                if location == _AT_BHAT:
                    if can_slide:
                        sliding = True
                        record_event(EventKind.SLIDING_START)
                        x_g = xi_bhat * (1.0 - x_i)
                    else:
                        region = _REGION_MID
                elif location == _AT_GHAT:
                    if mid_rate > 0.0:
                        region = _REGION_MID
                    else:
                        region = _REGION_BELOW
                        record_event(EventKind.ABSORBED_NO_TRADE)
                else:
                    region = location
                    if region == _REGION_BELOW:
                        record_event(EventKind.ABSORBED_NO_TRADE)

        if sliding:
            x_i = _rk4_logistic_decay(x_i, h, slide_decay)
            x_g = xi_bhat * (1.0 - x_i)
            t += h
            record_state()
            rate = slide_decay * x_i * (1.0 - x_i)
            quiet = quiet + 1 if rate < _QUIET_RATE else 0
            if quiet >= _QUIET_STEPS:
                traj.converged = True
                break
            continue

        xi_start = _xi_of(x_g, x_i)
        ng, ni = flow.rk4(region, x_g, x_i, h)
        xi_new = _xi_of(ng, ni)

        boundary = _crossed_boundary(region, mid_rate, xi_start, xi_new, xi_ghat, xi_bhat)
        if boundary is not None:
            theta, kind = boundary
            h_star, x_i = _localize_crossing(flow, region, x_g, x_i, h, theta)
            x_g = theta * (1.0 - x_i)
            t += h_star
            record_event(kind)
            record_state()
            quiet = 0
            continue

        x_g, x_i = ng, ni
        t += h
        record_state()

        dg, di = flow.rates(region, x_g, x_i)
        rate = max(abs(dg), abs(di))
        quiet = quiet + 1 if rate < _QUIET_RATE else 0
        if quiet >= _QUIET_STEPS:
            traj.converged = True
            break

    return traj


def _crossed_boundary(
    region: int,
    mid_rate: float,
    xi_start: float | None,
    xi_new: float | None,
    xi_ghat: float,
    xi_bhat: float,
) -> tuple[float, EventKind] | None:
    """The region boundary passed during the step, if any."""
    if xi_start is None or xi_new is None:
        return None
    if region == _REGION_ABOVE and xi_new < xi_bhat:
        return xi_bhat, EventKind.HIT_XI_BHAT
    if region == _REGION_MID:
        if mid_rate > 0.0 and xi_new > xi_bhat and xi_start < xi_bhat - THRESHOLD_TOL:
            return xi_bhat, EventKind.HIT_XI_BHAT
        if mid_rate < 0.0 and xi_new < xi_ghat and xi_start > xi_ghat + THRESHOLD_TOL:
            return xi_ghat, EventKind.HIT_XI_GHAT
    return None


def _localize_crossing(
    flow: _BranchFlow, region: int, x_g: float, x_i: float, h: float, theta: float
) -> tuple[float, float]:
    """Bisect the step length until the frozen-branch step lands on theta."""
    xi_start = _xi_of(x_g, x_i)
    assert xi_start is not None
    sign_start = xi_start - theta > 0.0
    lo, hi = 0.0, h
    while hi - lo > _EVENT_TIME_TOL:
        mid = 0.5 * (lo + hi)
        mg, mi = flow.rk4(region, x_g, x_i, mid)
        xi_mid = _xi_of(mg, mi)
        if xi_mid is None or (xi_mid - theta > 0.0) == sign_start:
            lo = mid
        else:
            hi = mid
    _, ni = flow.rk4(region, x_g, x_i, hi)
    return hi, ni


def _rk4_logistic_decay(x: float, h: float, k: float) -> float:
    """One RK4 step of dx/dt = -k * x * (1 - x)."""

    def g(v: float) -> float:
        return -k * v * (1.0 - v)

    k1 = g(x)
    k2 = g(x + 0.5 * h * k1)
    k3 = g(x + 0.5 * h * k2)
    k4 = g(x + h * k3)
    out = x + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0
    return min(max(out, 0.0), 1.0)
