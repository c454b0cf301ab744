import numpy as np
import pytest

from repmarket import (
    DegeneratePolicyError,
    EquilibriumKind,
    EventKind,
    InvalidStepError,
    MarketParams,
    SellerDistribution,
    Signal,
    SignalPolicy,
    filippov_map,
    integrate,
    replicator_rhs,
    seller_payoffs,
    stable_equilibrium,
    thresholds,
)

PARAMS = MarketParams(r=0.85, c=0.72)
POLICY = SignalPolicy(alpha=0.6, beta=0.2)


# --- oracle: the unreduced three-type imitation flow -----------------------


def full_replicator_oracle(state, params, policy):
    """Evaluate growth rates for all three types from first principles and
    return the (good, inactive) pair; independent of the reduced two-equation
    form used in production."""
    payoffs = seller_payoffs(params, policy, state.xi)
    pi = {"good": payoffs.pi_good, "bad": payoffs.pi_bad, "inactive": 0.0}
    shares = {"good": state.x_good, "bad": state.x_bad, "inactive": state.x_inactive}
    mean_payoff = sum(shares[k] * pi[k] for k in pi)
    rates = {k: shares[k] * (pi[k] - mean_payoff) for k in pi}
    return rates["good"], rates["inactive"]


def sample_feasible(rng, margin=0.01):
    while True:
        r = rng.uniform(0.1, 0.95)
        c = rng.uniform(0.0, 0.9)
        alpha = rng.uniform(0.02, 0.98)
        beta = rng.uniform(0.0, alpha)
        if alpha * (r - c) - beta * (1.0 - c) >= margin:
            return MarketParams(r, c), SignalPolicy(alpha, beta)


# --- replicator field -------------------------------------------------------


def test_replicator_vertex_is_fixed_point():
    assert replicator_rhs(SellerDistribution(1.0, 0.0, 0.0), PARAMS, POLICY) == (0.0, 0.0)


def test_replicator_examples():
    dx_good, dx_inactive = replicator_rhs(SellerDistribution(0.5, 0.5, 0.0), PARAMS, POLICY)
    assert dx_good == pytest.approx(0.0055, abs=1e-15)
    assert dx_inactive == 0.0

    dx_good, dx_inactive = replicator_rhs(SellerDistribution(0.2, 0.2, 0.6), PARAMS, POLICY)
    assert dx_good == pytest.approx(0.01024, abs=1e-15)
    assert dx_inactive == pytest.approx(-0.01608, abs=1e-15)


def test_replicator_matches_full_form():
    rng = np.random.default_rng(17)
    for _ in range(300):
        params = MarketParams(rng.uniform(0.1, 0.95), rng.uniform(0.0, 0.9))
        policy = SignalPolicy(rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98))
        shares = rng.dirichlet((1.0, 1.0, 1.0))
        state = SellerDistribution(shares[0], shares[1], 1.0 - shares[0] - shares[1])
        got = replicator_rhs(state, params, policy)
        want = full_replicator_oracle(state, params, policy)
        assert got[0] == pytest.approx(want[0], abs=1e-12)
        assert got[1] == pytest.approx(want[1], abs=1e-12)


def test_replicator_patched_all_good():
    params = MarketParams(r=0.85, c=0.5)
    policy = SignalPolicy(alpha=1.0, beta=0.3)
    state = SellerDistribution(0.7, 0.0, 0.3)
    pi_good = seller_payoffs(params, policy, 1.0).pi_good
    dx_good, dx_inactive = replicator_rhs(state, params, policy)
    assert dx_good == pytest.approx(0.7 * 0.3 * pi_good, abs=1e-15)
    assert dx_inactive == pytest.approx(-0.3 * 0.7 * pi_good, abs=1e-15)


def test_replicator_patched_no_good():
    params = MarketParams(r=0.85, c=0.5)
    policy = SignalPolicy(alpha=0.2, beta=1.0)
    state = SellerDistribution(0.0, 0.6, 0.4)
    dx_good, dx_inactive = replicator_rhs(state, params, policy)
    assert dx_good == 0.0
    pi_bad = seller_payoffs(params, policy, 0.0).pi_bad
    assert dx_inactive == pytest.approx(-0.4 * 0.6 * pi_bad, abs=1e-15)


def test_replicator_all_inactive():
    assert replicator_rhs(SellerDistribution(0.0, 0.0, 1.0), PARAMS, POLICY) == (0.0, 0.0)


# --- Filippov map -----------------------------------------------------------


def test_filippov_branches():
    th = thresholds(PARAMS, POLICY)
    mid = filippov_map(0.5, PARAMS, POLICY)
    assert mid.is_singleton
    assert mid.lower == pytest.approx(0.25 * 0.022, abs=1e-15)

    at_bhat = filippov_map(th.xi_bhat, PARAMS, POLICY)
    g = th.xi_bhat * (1.0 - th.xi_bhat)
    assert at_bhat.lower == pytest.approx(g * (0.85 - 1.0), abs=1e-15)
    assert at_bhat.upper == pytest.approx(g * 0.022, abs=1e-15)
    assert at_bhat.contains(0.0)

    below = filippov_map(0.1, PARAMS, POLICY)
    assert below.is_singleton and below.lower == 0.0

    above = filippov_map(0.9, PARAMS, POLICY)
    assert above.is_singleton
    assert above.lower == pytest.approx(0.09 * (-0.15), abs=1e-15)

    at_ghat = filippov_map(th.xi_ghat, PARAMS, POLICY)
    assert at_ghat.lower == 0.0
    assert at_ghat.contains(0.0)


def test_filippov_requires_canonical():
    with pytest.raises(ValueError):
        filippov_map(0.5, PARAMS, SignalPolicy(0.2, 0.6))


# --- integration ------------------------------------------------------------


def test_integrate_validates_step():
    start = SellerDistribution(0.5, 0.4, 0.1)
    with pytest.raises(InvalidStepError):
        integrate(start, PARAMS, POLICY, horizon=1.0, step=0.0)
    with pytest.raises(InvalidStepError):
        integrate(start, PARAMS, POLICY, horizon=-1.0)
    with pytest.raises(DegeneratePolicyError):
        integrate(start, PARAMS, SignalPolicy(0.0, 0.0), horizon=1.0)


def test_integrate_reaches_coexistence():
    traj = integrate(SellerDistribution(0.5, 0.4, 0.1), PARAMS, POLICY, horizon=400.0)
    eq = stable_equilibrium(PARAMS, POLICY)
    final = traj.states[-1]
    assert final.x_inactive < 1e-6
    assert abs(final.xi - eq.xi_star) < 1e-6
    kinds = [e.kind for e in traj.events]
    assert EventKind.HIT_XI_BHAT in kinds
    assert EventKind.SLIDING_START in kinds


def test_integrate_flat_below_lower_threshold():
    traj = integrate(SellerDistribution(0.1, 0.9, 0.0), PARAMS, POLICY, horizon=50.0)
    assert all(s.xi == pytest.approx(0.1, abs=1e-15) for s in traj.states)
    assert [e.kind for e in traj.events] == [EventKind.ABSORBED_NO_TRADE]
    assert traj.events[0].time == 0.0


def test_integrate_descends_from_above():
    traj = integrate(SellerDistribution(0.95, 0.05, 0.0), PARAMS, POLICY, horizon=100.0)
    xs = [s.xi for s in traj.states]
    assert all(a >= b - 1e-12 for a, b in zip(xs, xs[1:]))
    assert xs[-1] == stable_equilibrium(PARAMS, POLICY).xi_star


def test_integrate_vertex_stays():
    traj = integrate(SellerDistribution(1.0, 0.0, 0.0), PARAMS, POLICY, horizon=5.0)
    assert all(s.x_good == 1.0 for s in traj.states)


def test_integrate_infeasible_absorbs_at_lower_threshold():
    policy = SignalPolicy(0.6, 0.3)
    traj = integrate(SellerDistribution(0.5, 0.5, 0.0), PARAMS, policy, horizon=300.0)
    th = thresholds(PARAMS, policy)
    assert traj.states[-1].xi == pytest.approx(th.xi_ghat, abs=1e-9)
    kinds = [e.kind for e in traj.events]
    assert kinds == [EventKind.HIT_XI_GHAT, EventKind.ABSORBED_NO_TRADE]


def test_trajectory_stays_on_simplex():
    rng = np.random.default_rng(23)
    for _ in range(5):
        params, policy = sample_feasible(rng)
        shares = rng.dirichlet((2.0, 2.0, 1.0))
        start = SellerDistribution(shares[0], shares[1], 1.0 - shares[0] - shares[1])
        traj = integrate(start, params, policy, horizon=50.0)
        assert all(t2 > t1 for t1, t2 in zip(traj.times, traj.times[1:]))
        for state in traj.states:
            total = state.x_good + state.x_bad + state.x_inactive
            assert abs(total - 1.0) <= 1e-9


def test_realized_rates_lie_in_filippov_interval():
    # The change of xi over each step must lie in the interval hull of the
    # set-valued map at the step's endpoints.
    rng = np.random.default_rng(31)
    for _ in range(5):
        params, policy = sample_feasible(rng)
        start_xi = rng.uniform(0.05, 0.95)
        start = SellerDistribution(start_xi, 1.0 - start_xi, 0.0)
        traj = integrate(start, params, policy, horizon=30.0)
        for (t1, s1), (t2, s2) in zip(
            zip(traj.times, traj.states), zip(traj.times[1:], traj.states[1:])
        ):
            realized = (s2.xi - s1.xi) / (t2 - t1)
            f1 = filippov_map(s1.xi, params, policy)
            f2 = filippov_map(s2.xi, params, policy)
            lo = min(f1.lower, f2.lower) - 1e-9
            hi = max(f1.upper, f2.upper) + 1e-9
            assert lo <= realized <= hi


def test_all_good_state_is_unstable():
    rng = np.random.default_rng(41)
    eps = 1e-3
    found = 0
    while found < 20:
        params, policy = sample_feasible(rng)
        th = thresholds(params, policy)
        if th.xi_bhat >= 1.0 - 2.0 * eps:
            continue
        found += 1
        traj = integrate(
            SellerDistribution(1.0 - eps, eps, 0.0), params, policy, horizon=5.0
        )
        assert traj.states[-1].xi < 1.0 - eps


def test_sign_dichotomy_between_thresholds():
    rng = np.random.default_rng(43)
    for _ in range(100):
        r = rng.uniform(0.1, 0.95)
        c = rng.uniform(0.0, 0.9)
        alpha = rng.uniform(0.05, 0.95)
        beta = rng.uniform(0.0, alpha)
        params, policy = MarketParams(r, c), SignalPolicy(alpha, beta)
        th = thresholds(params, policy)
        if th.xi_bhat - th.xi_ghat < 1e-6:
            continue
        xi = 0.5 * (th.xi_ghat + th.xi_bhat)
        condition = alpha * (r - c) - beta * (1.0 - c)
        dx_good, _ = replicator_rhs(SellerDistribution(xi, 1.0 - xi, 0.0), params, policy)
        assert np.sign(dx_good) == np.sign(condition)


def test_terminal_xi_matches_closed_form():
    rng = np.random.default_rng(47)
    for _ in range(10):
        params, policy = sample_feasible(rng)
        eq = stable_equilibrium(params, policy)
        th = thresholds(params, policy)
        xi0 = rng.uniform(th.xi_ghat + 0.02 * (1.0 - th.xi_ghat), 0.98)
        traj = integrate(SellerDistribution(xi0, 1.0 - xi0, 0.0), params, policy, horizon=2000.0)
        assert abs(traj.states[-1].xi - eq.xi_star) <= 1e-4


# --- equilibrium classification ----------------------------------------------


def test_stable_equilibrium_interior():
    eq = stable_equilibrium(PARAMS, POLICY)
    assert eq.kind is EquilibriumKind.INTERIOR_COEXISTENCE
    assert eq.xi_star == pytest.approx(0.7017543859649122, abs=1e-15)
    assert eq.xi_star == eq.thresholds.xi_bhat
    assert eq.condition_lhs == pytest.approx(0.078, abs=1e-15)
    assert eq.condition_rhs == pytest.approx(0.056, abs=1e-15)


def test_stable_equilibrium_no_trade():
    eq = stable_equilibrium(PARAMS, SignalPolicy(0.6, 0.3))
    assert eq.kind is EquilibriumKind.NO_TRADE
    assert eq.xi_star is None


def test_stable_equilibrium_perfect_signals_boundary():
    eq = stable_equilibrium(PARAMS, SignalPolicy(1.0, 0.0))
    assert eq.kind is EquilibriumKind.INTERIOR_COEXISTENCE
    assert eq.xi_star == 1.0


def test_stable_equilibrium_classifies_after_canonicalization():
    direct = stable_equilibrium(PARAMS, POLICY)
    flipped = stable_equilibrium(PARAMS, SignalPolicy(0.4, 0.8))
    assert flipped.kind is direct.kind
    assert flipped.xi_star == pytest.approx(direct.xi_star, abs=1e-12)


def test_stable_equilibrium_degenerate_policies():
    for alpha, beta in ((0.0, 0.0), (1.0, 1.0)):
        eq = stable_equilibrium(PARAMS, SignalPolicy(alpha, beta))
        assert eq.kind is EquilibriumKind.NO_TRADE
        assert eq.thresholds is None


def test_no_trade_when_commission_exceeds_reward():
    eq = stable_equilibrium(MarketParams(r=0.5, c=0.6), SignalPolicy(0.9, 0.0))
    assert eq.kind is EquilibriumKind.NO_TRADE
