"""Platform-side economics: commission revenue, signaling cost, and optimizers.

Revenue is the commission stream at the unique coexistence equilibrium, zero
when the market collapses. Achieving accuracy away from what the platform gets
for free is costly: the free set is the convex hull of the natural operating
point, its label-flipped mirror, and the uninformative diagonal; outside it
the cost grows with the distance to the hull and blows up toward perfectly
informative corners.

The profit landscape is discontinuous at the feasibility boundary, so the
optimizers use a deterministic dense grid followed by a derivative-free local
refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize as _scipy_optimize

from .errors import InfeasiblePointError
from .market import MarketParams, SignalPolicy, canonicalize

#: Tolerance for the point-in-hull test; boundary points are free.
_HULL_TOL = 1e-12


@dataclass(frozen=True)
class CostModel:
    """Cost of running the reputation system at a given operating point.

    ``(alpha0, beta0)`` is the natural accuracy obtained for free. ``kappa``
    scales the cost outside the free hull, ``p`` the growth in hull distance,
    and ``q`` the blow-up toward the unit-square boundary.
    """

    alpha0: float
    beta0: float
    kappa: float
    p: float
    q: float

    def __post_init__(self) -> None:
        for name, value in (("alpha0", self.alpha0), ("beta0", self.beta0)):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.kappa < 0.0:
            raise ValueError(f"kappa must be nonnegative, got {self.kappa}")
        if self.p < 1.0:
            raise ValueError(f"p must be at least 1, got {self.p}")
        if not 0.0 < self.q <= 1.0:
            raise ValueError(f"q must lie in (0, 1], got {self.q}")


@dataclass(frozen=True)
class ProfitReport:
    revenue: float
    cost: float
    profit: float
    feasible: bool


@dataclass(frozen=True)
class Optimum:
    alpha_star: float
    beta_star: float
    s_star: float | None
    profit: float
    grid_resolution: float


def beta_bar(params: MarketParams, alpha: float) -> float:
    """Largest false-positive rate compatible with positive revenue at ``alpha``."""
    if params.c >= 1.0:
        raise ValueError(f"commission must be below 1, got {params.c}")
    raw = alpha * (params.r - params.c) / (1.0 - params.c)
    return min(max(raw, 0.0), 1.0)


def revenue(params: MarketParams, policy: SignalPolicy) -> float:
    """Commission revenue at the stable equilibrium; 0 when none exists."""
    canon, _ = canonicalize(policy)
    return float(_revenue_canonical(params.r, params.c, canon.alpha, canon.beta))


def _revenue_canonical(r, c, a, b):
    """Collapsed closed form of the equilibrium commission stream.

    Works elementwise on scalars or arrays; requires a >= b. Infeasible points
    yield exactly 0.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    feasible = a * (r - c) > b * (1.0 - c)
    den = 2.0 * ((1.0 - a) * r + (1.0 - b))
    num = 2.0 * (1.0 - a) * c * r + (1.0 - b) * c * (2.0 - (1.0 - a) * (1.0 + r))
    with np.errstate(divide="ignore", invalid="ignore"):
        value = num / den
    return np.where(feasible, value, 0.0)


def revenue_gradient(params: MarketParams, policy: SignalPolicy) -> tuple[float, float]:
    """Closed-form partials of revenue in (alpha, beta); both nonnegative.

    Requires alpha >= beta and a feasible point.
    """
    a, b = policy.alpha, policy.beta
    if a < b:
        raise ValueError("revenue_gradient requires alpha >= beta")
    r, c = params.r, params.c
    if not a * (r - c) > b * (1.0 - c):
        raise InfeasiblePointError(
            f"no positive-revenue equilibrium at alpha={a}, beta={b}"
        )
    den = 2.0 * ((1.0 - b) + (1.0 - a) * r) ** 2
    d_alpha = (1.0 - b) ** 2 * c * (1.0 + r) / den
    d_beta = (1.0 - a) ** 2 * c * r * (1.0 + r) / den
    return d_alpha, d_beta


def _fold(a, b):
    """Map a point into the alpha >= beta half-square.

    The free set is symmetric under the label flip (a, b) -> (1-a, 1-b), so
    evaluating geometry on the folded representative makes that symmetry exact
    rather than up to roundoff.
    """
    flip = np.asarray(b) > np.asarray(a)
    return np.where(flip, 1.0 - np.asarray(a), a), np.where(flip, 1.0 - np.asarray(b), b)


def _hull_vertices(cm: CostModel) -> list[tuple[float, float]] | None:
    """Counterclockwise vertices of the free hull; None when it degenerates
    to the diagonal segment (alpha0 == beta0)."""
    a0, b0 = cm.alpha0, cm.beta0
    if a0 == b0:
        return None
    if a0 > b0:
        return [(0.0, 0.0), (a0, b0), (1.0, 1.0), (1.0 - a0, 1.0 - b0)]
    return [(0.0, 0.0), (1.0 - a0, 1.0 - b0), (1.0, 1.0), (a0, b0)]


def _inside_hull(x, y, cm: CostModel):
    """Elementwise point-in-free-set test (boundary counts as inside)."""
    verts = _hull_vertices(cm)
    if verts is None:
        return np.abs(np.asarray(x) - np.asarray(y)) <= _HULL_TOL
    inside = np.full(np.broadcast(np.asarray(x), np.asarray(y)).shape, True)
    for (x1, y1), (x2, y2) in zip(verts, verts[1:] + verts[:1]):
        cross = (x2 - x1) * (y - y1) - (y2 - y1) * (x - x1)
        inside = inside & (cross >= -_HULL_TOL)
    return inside


def _segment_distance(x, y, x1, y1, x2, y2):
    dx, dy = x2 - x1, y2 - y1
    length2 = dx * dx + dy * dy
    t = ((x - x1) * dx + (y - y1) * dy) / length2
    t = np.clip(t, 0.0, 1.0)
    px, py = x1 + t * dx, y1 + t * dy
    return np.hypot(x - px, y - py)


def _boundary_distance(x, y, cm: CostModel):
    verts = _hull_vertices(cm)
    if verts is None:
        verts = [(0.0, 0.0), (1.0, 1.0)]
        return _segment_distance(x, y, 0.0, 0.0, 1.0, 1.0)
    dist = None
    for (x1, y1), (x2, y2) in zip(verts, verts[1:] + verts[:1]):
        d = _segment_distance(x, y, x1, y1, x2, y2)
        dist = d if dist is None else np.minimum(dist, d)
    return dist


def hull_distance(policy: SignalPolicy, cost_model: CostModel) -> float:
    """Euclidean distance from the operating point to the free set (0 inside)."""
    a, b = _fold(policy.alpha, policy.beta)
    if bool(_inside_hull(a, b, cost_model)):
        return 0.0
    return float(_boundary_distance(a, b, cost_model))


def signal_cost(policy: SignalPolicy, cost_model: CostModel) -> float:
    """Cost of operating at (alpha, beta); 0 on the free set, +inf at the
    unit-square boundary outside it."""
    a, b = _fold(policy.alpha, policy.beta)
    if bool(_inside_hull(a, b, cost_model)):
        return 0.0
    if cost_model.kappa == 0.0:
        return 0.0
    den = float(a) * float(b) * (1.0 - float(a)) * (1.0 - float(b))
    if den <= 0.0:
        return math.inf
    d = float(_boundary_distance(a, b, cost_model))
    return cost_model.kappa * d**cost_model.p / den**cost_model.q


def _signal_cost_grid(A, B, cm: CostModel):
    """Vectorized signal_cost on arrays strictly inside (0, 1)^2."""
    A, B = _fold(A, B)
    inside = _inside_hull(A, B, cm)
    if cm.kappa == 0.0:
        return np.zeros_like(A)
    d = _boundary_distance(A, B, cm)
    den = (A * B * (1.0 - A) * (1.0 - B)) ** cm.q
    return np.where(inside, 0.0, cm.kappa * d**cm.p / den)


def profit(
    params: MarketParams, policy: SignalPolicy, cost_model: CostModel
) -> ProfitReport:
    """Net profit: equilibrium revenue minus signaling cost."""
    canon, _ = canonicalize(policy)
    feasible = canon.alpha * (params.r - params.c) > canon.beta * (1.0 - params.c)
    rev = revenue(params, policy)
    cost = signal_cost(policy, cost_model)
    return ProfitReport(revenue=rev, cost=cost, profit=rev - cost, feasible=feasible)


def _profit_value(r: float, c: float, a: float, b: float, cm: CostModel) -> float:
    params = MarketParams(r, c)
    report = profit(params, SignalPolicy(a, b), cm)
    return report.profit


def _candidate_key(r: float, c: float, a: float, b: float, cm: CostModel):
    """Deterministic preference order: max profit, then lower cost, lower beta,
    lower alpha."""
    value = _profit_value(r, c, a, b, cm)
    cost = signal_cost(SignalPolicy(a, b), cm)
    return (-value, cost, b, a)


def optimize_signals(
    params: MarketParams,
    cost_model: CostModel,
    resolution: float = 1.0 / 256.0,
) -> Optimum:
    """Maximize profit over the open square of operating points.

    Dense grid at the given resolution (grid points k/m for k = 1..m-1, with
    m = round(1/resolution)), then a bounded Nelder-Mead polish from the best
    cell. The natural point and its mirror are always candidates, so the
    result never falls below the zero-cost profit and never below zero.
    """
    if not 0.0 < resolution <= 0.1:
        raise ValueError(f"resolution must lie in (0, 0.1], got {resolution}")
    m = int(round(1.0 / resolution))
    r, c = params.r, params.c

    vals = np.arange(1, m) / m
    A, B = np.meshgrid(vals, vals, indexing="ij")
    rev = _revenue_canonical(r, c, *_canonical_arrays(A, B))
    cost = _signal_cost_grid(A, B, cost_model)
    value = rev - cost

    flat_value = value.ravel()
    flat_cost = cost.ravel()
    flat_a = A.ravel()
    flat_b = B.ravel()
    order = np.lexsort((flat_a, flat_b, flat_cost, -flat_value))
    best = order[0]
    grid_a, grid_b = float(flat_a[best]), float(flat_b[best])

    refined = _scipy_optimize.minimize(
        lambda v: -_profit_value(r, c, float(v[0]), float(v[1]), cost_model),
        x0=np.array([grid_a, grid_b]),
        method="Nelder-Mead",
        bounds=[(1e-9, 1.0 - 1e-9), (1e-9, 1.0 - 1e-9)],
        options={"maxiter": 200, "xatol": 1e-10, "fatol": 1e-12},
    )

    candidates = [
        (grid_a, grid_b),
        (float(refined.x[0]), float(refined.x[1])),
        (cost_model.alpha0, cost_model.beta0),
        (1.0 - cost_model.alpha0, 1.0 - cost_model.beta0),
    ]
    best_a, best_b = min(candidates, key=lambda ab: _candidate_key(r, c, *ab, cost_model))
    # report the canonical representative; mirror twins are the same system
    best, _ = canonicalize(SignalPolicy(best_a, best_b))
    return Optimum(
        alpha_star=best.alpha,
        beta_star=best.beta,
        s_star=None,
        profit=_profit_value(r, c, best.alpha, best.beta, cost_model),
        grid_resolution=1.0 / m,
    )


def _canonical_arrays(A, B):
    flip = B > A
    return np.where(flip, 1.0 - A, A), np.where(flip, 1.0 - B, B)


def optimize_with_commission(
    r: float,
    cost_model: CostModel,
    s_values,
    resolution: float = 1.0 / 256.0,
) -> Optimum:
    """Jointly maximize profit over the commission ratio s = c/r and the
    operating point; every s must lie in [0, 1)."""
    s_list = [float(s) for s in s_values]
    if not s_list:
        raise ValueError("s_values must be nonempty")
    for s in s_list:
        if not 0.0 <= s < 1.0:
            raise ValueError(f"s must lie in [0, 1), got {s}")

    best: tuple | None = None
    best_opt: Optimum | None = None
    for s in s_list:
        opt = optimize_signals(MarketParams(r, s * r), cost_model, resolution)
        key = (
            -opt.profit,
            signal_cost(SignalPolicy(opt.alpha_star, opt.beta_star), cost_model),
            opt.beta_star,
            opt.alpha_star,
            s,
        )
        if best is None or key < best:
            best = key
            best_opt = Optimum(
                alpha_star=opt.alpha_star,
                beta_star=opt.beta_star,
                s_star=s,
                profit=opt.profit,
                grid_resolution=opt.grid_resolution,
            )
    assert best_opt is not None
    return best_opt
