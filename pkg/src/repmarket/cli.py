"""Reproducible experiment driver.

Subcommands read a declarative YAML config (plus ``--set dotted.path=value``
overrides) and emit CSV/JSON artifacts with fixed schemas:

- ``equilibrium``: one JSON document with the market outcome at a point.
- ``sweep``: 2-D grid of pointwise quantities, row-major CSV.
- ``optimize``: outer grid with the profit-maximizing operating point per cell.
- ``integrate``: one deterministic trajectory as CSV.
- ``simulate``: one stochastic run as CSV plus a quasi-stationary summary JSON.

Exit codes: 0 success, 2 config error, 3 runtime error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import yaml

from . import __version__
from .abm import SimConfig, quasi_stationary, run as run_sim
from .dynamics import EquilibriumKind, integrate, stable_equilibrium
from .errors import ConfigError, ModelError
from .market import (
    MarketParams,
    SellerDistribution,
    SignalPolicy,
    payoff_difference,
    seller_payoffs,
)
from .output import json_document, write_csv, write_json
from .platform_econ import (
    CostModel,
    optimize_signals,
    optimize_with_commission,
    profit,
    revenue,
)
from .welfare import welfare

SWEEP_AXES = ("alpha", "beta", "xi", "r", "kappa", "s")
OUTER_AXES = ("r", "kappa", "s")
QUANTITIES = (
    "revenue",
    "cost",
    "profit",
    "feasible",
    "u_buyer",
    "u_seller",
    "u_good_seller",
    "delta",
)


# --- config plumbing ---


def _load_config(path: str, overrides: list[str]) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config: invalid YAML in {path}: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("config: top level must be a mapping")
    for item in overrides:
        _apply_override(raw, item)
    return raw


def _apply_override(cfg: dict, item: str) -> None:
    key, sep, value = item.partition("=")
    if not sep or not key:
        raise ConfigError(f"--set {item!r}: expected dotted.path=value")
    try:
        parsed = yaml.safe_load(value)
    except yaml.YAMLError as exc:
        raise ConfigError(f"--set {key}: invalid value {value!r}: {exc}") from exc
    node = cfg
    parts = key.split(".")
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f"--set {key}: {part} is not a mapping")
        node = child
    node[parts[-1]] = parsed


def _check_keys(d: dict, allowed: tuple[str, ...], path: str) -> None:
    for key in d:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}: unknown key")


def _mapping(cfg: dict, key: str, required: bool) -> dict | None:
    if key not in cfg:
        if required:
            raise ConfigError(f"{key}: required section is missing")
        return None
    value = cfg[key]
    if not isinstance(value, dict):
        raise ConfigError(f"{key}: must be a mapping")
    return value


def _number(d: dict, key: str, path: str, required: bool = True, default=None):
    if key not in d:
        if required:
            raise ConfigError(f"{path}.{key}: required field is missing")
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}.{key}: must be a number, got {value!r}")
    return float(value)


def _integer(d: dict, key: str, path: str, required: bool = True, default=None):
    if key not in d:
        if required:
            raise ConfigError(f"{path}.{key}: required field is missing")
        return default
    value = d[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}.{key}: must be an integer, got {value!r}")
    return value


_AXIS_DOMAINS = {
    "alpha": (0.0, 1.0, True, True),
    "beta": (0.0, 1.0, True, True),
    "xi": (0.0, 1.0, True, True),
    "r": (0.0, 1.0, False, False),
    "kappa": (0.0, float("inf"), True, False),
    "s": (0.0, 1.0, True, False),
}


def _axis(d: dict, path: str, choices: tuple[str, ...]) -> tuple[str, np.ndarray]:
    _check_keys(d, ("axis", "min", "max", "steps"), path)
    name = d.get("axis")
    if name not in choices:
        raise ConfigError(f"{path}.axis: must be one of {choices}, got {name!r}")
    lo = _number(d, "min", path)
    hi = _number(d, "max", path)
    steps = _integer(d, "steps", path)
    if steps < 1:
        raise ConfigError(f"{path}.steps: must be at least 1, got {steps}")
    if steps == 1 and lo != hi:
        raise ConfigError(f"{path}: steps=1 requires min == max")
    if lo > hi:
        raise ConfigError(f"{path}: min must not exceed max")
    dlo, dhi, lo_closed, hi_closed = _AXIS_DOMAINS[name]
    if lo < dlo or (lo == dlo and not lo_closed):
        raise ConfigError(f"{path}.min: {lo} is outside the {name} domain")
    if hi > dhi or (hi == dhi and not hi_closed):
        raise ConfigError(f"{path}.max: {hi} is outside the {name} domain")
    values = np.linspace(lo, hi, steps) if steps > 1 else np.array([lo])
    return name, values


def _market_fields(cfg: dict, required: bool = True) -> tuple[float | None, float | None]:
    section = _mapping(cfg, "market", required)
    if section is None:
        return None, None
    _check_keys(section, ("r", "c"), "market")
    r = _number(section, "r", "market", required=False)
    c = _number(section, "c", "market", required=False)
    if r is not None and not 0.0 < r < 1.0:
        raise ConfigError(f"market.r: must lie strictly in (0, 1), got {r}")
    if c is not None and c < 0.0:
        raise ConfigError(f"market.c: must be nonnegative, got {c}")
    return r, c


def _policy_fields(cfg: dict, required: bool = True) -> tuple[float | None, float | None]:
    section = _mapping(cfg, "policy", required)
    if section is None:
        return None, None
    _check_keys(section, ("alpha", "beta"), "policy")
    alpha = _number(section, "alpha", "policy", required=required)
    beta = _number(section, "beta", "policy", required=required)
    for name, value in (("alpha", alpha), ("beta", beta)):
        if value is not None and not 0.0 <= value <= 1.0:
            raise ConfigError(f"policy.{name}: must lie in [0, 1], got {value}")
    return alpha, beta


def _cost_fields(cfg: dict, required: bool, kappa_required: bool = True) -> dict | None:
    section = _mapping(cfg, "cost", required)
    if section is None:
        return None
    _check_keys(section, ("alpha0", "beta0", "kappa", "p", "q"), "cost")
    fields = {
        "alpha0": _number(section, "alpha0", "cost"),
        "beta0": _number(section, "beta0", "cost"),
        "kappa": _number(section, "kappa", "cost", required=kappa_required),
        "p": _number(section, "p", "cost"),
        "q": _number(section, "q", "cost"),
    }
    try:
        CostModel(**{**fields, "kappa": fields["kappa"] if fields["kappa"] is not None else 0.0})
    except ValueError as exc:
        raise ConfigError(f"cost: {exc}") from exc
    return fields


def _distribution(section: dict, path: str) -> SellerDistribution:
    _check_keys(section, ("x_good", "x_bad", "x_inactive"), path)
    try:
        return SellerDistribution(
            x_good=_number(section, "x_good", path),
            x_bad=_number(section, "x_bad", path),
            x_inactive=_number(section, "x_inactive", path),
        )
    except ValueError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


# --- equilibrium ---


def _cmd_equilibrium(cfg: dict, args) -> None:
    _check_keys(cfg, ("market", "policy", "cost"), "config")
    r, c = _market_fields(cfg)
    if r is None:
        raise ConfigError("market.r: required field is missing")
    if c is None:
        raise ConfigError("market.c: required field is missing")
    alpha, beta = _policy_fields(cfg)
    cost_fields = _cost_fields(cfg, required=False)

    params = MarketParams(r, c)
    policy = SignalPolicy(alpha, beta)
    eq = stable_equilibrium(params, policy)
    wf = welfare(params, policy)
    if cost_fields is not None:
        report = profit(params, policy, CostModel(**cost_fields))
        rev, cost, net = report.revenue, report.cost, report.profit
    else:
        rev = revenue(params, policy)
        cost = 0.0
        net = rev
    interior = eq.kind is EquilibriumKind.INTERIOR_COEXISTENCE
    if interior:
        payoffs = seller_payoffs(params, policy, eq.xi_star)
        pi_good, pi_bad = payoffs.pi_good, payoffs.pi_bad
    else:
        pi_good = pi_bad = 0.0
    doc = {
        "kind": eq.kind.value,
        "xi_star": eq.xi_star,
        "thresholds": (
            {"xi_ghat": eq.thresholds.xi_ghat, "xi_bhat": eq.thresholds.xi_bhat}
            if eq.thresholds is not None
            else None
        ),
        "pi_good": pi_good,
        "pi_bad": pi_bad,
        "revenue": rev,
        "cost": cost,
        "profit": net,
        "u_buyer": wf.u_buyer,
        "u_seller": wf.u_seller,
        "u_good_seller": wf.u_good_seller,
    }
    text = json_document(doc)
    sys.stdout.write(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# --- sweep ---


def _validate_sweep(cfg: dict) -> dict:
    _check_keys(cfg, ("market", "policy", "cost", "xi", "grid", "quantities"), "config")
    grid = _mapping(cfg, "grid", required=True)
    _check_keys(grid, ("x", "y"), "grid")
    x_section = _mapping(grid, "x", required=True)
    y_section = _mapping(grid, "y", required=True)
    x_axis, xs = _axis(x_section, "grid.x", SWEEP_AXES)
    y_axis, ys = _axis(y_section, "grid.y", SWEEP_AXES)
    if x_axis == y_axis:
        raise ConfigError("grid.y.axis: must differ from grid.x.axis")

    quantities = cfg.get("quantities")
    if not isinstance(quantities, list) or not quantities:
        raise ConfigError("quantities: must be a nonempty list")
    for q in quantities:
        if q not in QUANTITIES:
            raise ConfigError(f"quantities: unknown quantity {q!r}")

    axes = {x_axis, y_axis}
    r, c = _market_fields(cfg, required=False)
    alpha, beta = _policy_fields(cfg, required=False)
    xi = None
    if "xi" in cfg:
        if isinstance(cfg["xi"], bool) or not isinstance(cfg["xi"], (int, float)):
            raise ConfigError(f"xi: must be a number, got {cfg['xi']!r}")
        xi = float(cfg["xi"])
        if not 0.0 <= xi <= 1.0:
            raise ConfigError(f"xi: must lie in [0, 1], got {xi}")

    needs_cost = bool({"cost", "profit"} & set(quantities)) or "kappa" in axes
    cost_fields = _cost_fields(cfg, required=needs_cost, kappa_required="kappa" not in axes)

    if r is None and "r" not in axes:
        raise ConfigError("market.r: required (not provided and not a grid axis)")
    if c is None and "c" not in axes and "s" not in axes:
        raise ConfigError("market.c: required (not provided and s is not a grid axis)")
    if "s" in axes and c is not None:
        raise ConfigError("market.c: must be omitted when s is a grid axis")
    if alpha is None and "alpha" not in axes:
        raise ConfigError("policy.alpha: required (not provided and not a grid axis)")
    if beta is None and "beta" not in axes:
        raise ConfigError("policy.beta: required (not provided and not a grid axis)")
    if "delta" in quantities and xi is None and "xi" not in axes:
        raise ConfigError("xi: required by the delta quantity (not provided and not a grid axis)")

    return {
        "x_axis": x_axis,
        "xs": xs.tolist(),
        "y_axis": y_axis,
        "ys": ys.tolist(),
        "quantities": list(quantities),
        "base": {"r": r, "c": c, "alpha": alpha, "beta": beta, "xi": xi, "s": None, "kappa": None},
        "cost": cost_fields,
    }


def _sweep_eval(task: dict, xv: float, yv: float) -> list:
    point = dict(task["base"])
    point[task["x_axis"]] = xv
    point[task["y_axis"]] = yv
    if point["s"] is not None:
        point["c"] = point["s"] * point["r"]
    cost_fields = task["cost"]
    if cost_fields is not None and point["kappa"] is not None:
        cost_fields = {**cost_fields, "kappa": point["kappa"]}
    cost_model = CostModel(**cost_fields) if cost_fields is not None else None

    params = MarketParams(point["r"], point["c"])
    policy = SignalPolicy(point["alpha"], point["beta"])
    report = profit(params, policy, cost_model) if cost_model is not None else None
    wf = None
    row: list = [xv, yv]
    for quantity in task["quantities"]:
        if quantity == "revenue":
            row.append(report.revenue if report is not None else revenue(params, policy))
        elif quantity == "cost":
            row.append(report.cost)
        elif quantity == "profit":
            row.append(report.profit)
        elif quantity == "feasible":
            eq = stable_equilibrium(params, policy)
            row.append(eq.kind is EquilibriumKind.INTERIOR_COEXISTENCE)
        elif quantity in ("u_buyer", "u_seller", "u_good_seller"):
            if wf is None:
                wf = welfare(params, policy)
            row.append(getattr(wf, quantity))
        elif quantity == "delta":
            row.append(payoff_difference(params, policy, point["xi"]))
    return row


def _sweep_chunk(payload: tuple) -> list[list]:
    task, xs = payload
    return [_sweep_eval(task, xv, yv) for xv in xs for yv in task["ys"]]


def _cmd_sweep(cfg: dict, args) -> None:
    task = _validate_sweep(cfg)
    _require_out(args)
    header = [task["x_axis"], task["y_axis"], *task["quantities"]]
    rows = _fan_out(_sweep_chunk, task, task["xs"], args.jobs)
    write_csv(args.out, header, rows)


# --- optimize ---


def _validate_optimize(cfg: dict) -> dict:
    _check_keys(cfg, ("market", "cost", "outer", "search"), "config")
    outer = _mapping(cfg, "outer", required=True)
    _check_keys(outer, ("x", "y"), "outer")
    x_axis, xs = _axis(_mapping(outer, "x", True), "outer.x", OUTER_AXES)
    y_axis, ys = _axis(_mapping(outer, "y", True), "outer.y", OUTER_AXES)
    if x_axis == y_axis:
        raise ConfigError("outer.y.axis: must differ from outer.x.axis")
    axes = {x_axis, y_axis}

    r, c = _market_fields(cfg, required=False)
    cost_fields = _cost_fields(cfg, required=True, kappa_required="kappa" not in axes)

    search = _mapping(cfg, "search", required=False) or {}
    _check_keys(search, ("resolution", "commission"), "search")
    resolution = _number(search, "resolution", "search", required=False, default=1.0 / 256.0)
    if not 0.0 < resolution <= 0.1:
        raise ConfigError(f"search.resolution: must lie in (0, 0.1], got {resolution}")
    commission = None
    if "commission" in search:
        section = search["commission"]
        if not isinstance(section, dict):
            raise ConfigError("search.commission: must be a mapping")
        _check_keys(section, ("min", "max", "steps"), "search.commission")
        lo = _number(section, "min", "search.commission")
        hi = _number(section, "max", "search.commission")
        steps = _integer(section, "steps", "search.commission")
        if steps < 1:
            raise ConfigError("search.commission.steps: must be at least 1")
        if not (0.0 <= lo <= hi < 1.0):
            raise ConfigError("search.commission: values must satisfy 0 <= min <= max < 1")
        commission = np.linspace(lo, hi, steps).tolist() if steps > 1 else [lo]

    if r is None and "r" not in axes:
        raise ConfigError("market.r: required (not provided and not an outer axis)")
    if "s" in axes and c is not None:
        raise ConfigError("market.c: must be omitted when s is an outer axis")
    if "s" in axes and commission is not None:
        raise ConfigError("search.commission: conflicts with an s outer axis")
    if commission is not None and c is not None:
        raise ConfigError("market.c: must be omitted when search.commission is declared")
    if c is None and "s" not in axes and commission is None:
        raise ConfigError("market.c: required (no s axis and no commission search)")

    return {
        "x_axis": x_axis,
        "xs": xs.tolist(),
        "y_axis": y_axis,
        "ys": ys.tolist(),
        "base": {"r": r, "c": c, "kappa": None, "s": None},
        "cost": cost_fields,
        "resolution": resolution,
        "commission": commission,
    }


def _optimize_eval(task: dict, xv: float, yv: float) -> list:
    point = dict(task["base"])
    point[task["x_axis"]] = xv
    point[task["y_axis"]] = yv
    cost_fields = task["cost"]
    if point["kappa"] is not None:
        cost_fields = {**cost_fields, "kappa": point["kappa"]}
    cost_model = CostModel(**cost_fields)
    r = point["r"]

    if task["commission"] is not None:
        opt = optimize_with_commission(r, cost_model, task["commission"], task["resolution"])
        c_star = opt.s_star * r
    else:
        c_star = point["s"] * r if point["s"] is not None else point["c"]
        opt = optimize_signals(MarketParams(r, c_star), cost_model, task["resolution"])

    wf = welfare(MarketParams(r, c_star), SignalPolicy(opt.alpha_star, opt.beta_star))
    row = [xv, yv, opt.profit, opt.alpha_star, opt.beta_star]
    if task["commission"] is not None:
        row.append(opt.s_star)
    row.extend([wf.u_buyer, wf.u_seller, wf.u_good_seller])
    return row


def _optimize_chunk(payload: tuple) -> list[list]:
    task, xs = payload
    return [_optimize_eval(task, xv, yv) for xv in xs for yv in task["ys"]]


def _cmd_optimize(cfg: dict, args) -> None:
    task = _validate_optimize(cfg)
    _require_out(args)
    header = [task["x_axis"], task["y_axis"], "profit_star", "alpha_star", "beta_star"]
    if task["commission"] is not None:
        header.append("s_star")
    header.extend(["u_buyer_star", "u_seller_star", "u_good_seller_star"])
    rows = _fan_out(_optimize_chunk, task, task["xs"], args.jobs)
    write_csv(args.out, header, rows)


# --- integrate ---


def _cmd_integrate(cfg: dict, args) -> None:
    _check_keys(cfg, ("market", "policy", "initial", "horizon", "step"), "config")
    _require_out(args)
    r, c = _market_fields(cfg)
    if r is None or c is None:
        raise ConfigError("market: both r and c are required")
    alpha, beta = _policy_fields(cfg)
    initial = _distribution(_mapping(cfg, "initial", required=True), "initial")
    horizon = _number(cfg, "horizon", "config")
    step = _number(cfg, "step", "config", required=False, default=1e-2)
    if horizon < 0.0:
        raise ConfigError(f"horizon: must be nonnegative, got {horizon}")
    if step <= 0.0:
        raise ConfigError(f"step: must be positive, got {step}")

    traj = integrate(initial, MarketParams(r, c), SignalPolicy(alpha, beta), horizon, step)
    rows = (
        [t, s.x_good, s.x_bad, s.x_inactive, s.xi]
        for t, s in zip(traj.times, traj.states)
    )
    write_csv(args.out, ["t", "x_good", "x_bad", "x_inactive", "xi"], rows)


# --- simulate ---


def _cmd_simulate(cfg: dict, args) -> None:
    _check_keys(cfg, ("market", "policy", "sim", "summary"), "config")
    _require_out(args)
    r, c = _market_fields(cfg)
    if r is None or c is None:
        raise ConfigError("market: both r and c are required")
    alpha, beta = _policy_fields(cfg)
    sim_section = _mapping(cfg, "sim", required=True)
    _check_keys(
        sim_section,
        ("n_sellers", "lambda_per_seller", "sigma", "periods", "seed", "initial"),
        "sim",
    )
    periods = _integer(sim_section, "periods", "sim")
    if periods < 4:
        raise ConfigError(
            f"sim.periods: must be at least 4 for a nonempty summary window, got {periods}"
        )
    seed = _integer(sim_section, "seed", "sim", required=args.seed is None, default=0)
    if args.seed is not None:
        seed = args.seed
    initial = _distribution(_mapping(sim_section, "initial", required=True), "sim.initial")
    try:
        sim_config = SimConfig(
            n_sellers=_integer(sim_section, "n_sellers", "sim"),
            lambda_per_seller=_number(sim_section, "lambda_per_seller", "sim"),
            sigma=_number(sim_section, "sigma", "sim"),
            periods=periods,
            seed=seed,
            initial=initial,
        )
    except ValueError as exc:
        raise ConfigError(f"sim: {exc}") from exc
    summary_section = _mapping(cfg, "summary", required=False) or {}
    _check_keys(summary_section, ("bins",), "summary")
    bins = _integer(summary_section, "bins", "summary", required=False, default=200)
    if bins < 1:
        raise ConfigError(f"summary.bins: must be positive, got {bins}")

    params = MarketParams(r, c)
    policy = SignalPolicy(alpha, beta)
    traj = run_sim(sim_config, params, policy)
    rows = (
        [
            t,
            int(traj.n_good[t]),
            int(traj.n_bad[t]),
            int(traj.n_inactive[t]),
            float(traj.xi[t]),
            int(traj.sales_good[t]),
            int(traj.sales_bad[t]),
            float(traj.revenue[t]),
        ]
        for t in range(traj.periods)
    )
    write_csv(
        args.out,
        ["period", "n_good", "n_bad", "n_inactive", "xi", "sales_good", "sales_bad", "revenue"],
        rows,
    )

    summary = quasi_stationary(traj, bins)
    eq = stable_equilibrium(params, policy)
    doc = {
        "mode_xi": summary.mode_xi,
        "histogram": [int(v) for v in summary.histogram],
        "bins": bins,
        "window": [summary.window[0], summary.window[1]],
        "extinct_good": summary.extinct_good,
        "market": {"r": r, "c": c},
        "policy": {"alpha": alpha, "beta": beta},
        "sim": {
            "n_sellers": sim_config.n_sellers,
            "lambda_per_seller": sim_config.lambda_per_seller,
            "sigma": sim_config.sigma,
            "periods": sim_config.periods,
            "seed": sim_config.seed,
        },
        "analytic": {
            "kind": eq.kind.value,
            "xi_star": eq.xi_star,
            "xi_ghat": eq.thresholds.xi_ghat if eq.thresholds else None,
            "xi_bhat": eq.thresholds.xi_bhat if eq.thresholds else None,
        },
    }
    write_json(_summary_path(args.out), doc)


def _summary_path(out: str) -> str:
    stem = out[:-4] if out.endswith(".csv") else out
    return stem + ".summary.json"


# --- shared driver machinery ---


def _require_out(args) -> None:
    if not args.out:
        raise ConfigError("out: --out PATH is required for this command")


def _fan_out(worker, task: dict, xs: list, jobs: int):
    if jobs < 1:
        raise ConfigError(f"jobs: must be at least 1, got {jobs}")
    if jobs == 1 or len(xs) <= 1:
        return worker((task, xs))
    chunks = [list(part) for part in np.array_split(xs, min(jobs, len(xs)))]
    rows: list[list] = []
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        for part in executor.map(worker, [(task, chunk) for chunk in chunks]):
            rows.extend(part)
    return rows


_COMMANDS = {
    "equilibrium": _cmd_equilibrium,
    "sweep": _cmd_sweep,
    "optimize": _cmd_optimize,
    "integrate": _cmd_integrate,
    "simulate": _cmd_simulate,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repmarket",
        description="Experiment driver for the reputation-platform market model.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("equilibrium", "market outcome at one parameter point (JSON)"),
        ("sweep", "2-D grid of pointwise quantities (CSV)"),
        ("optimize", "profit-maximizing operating point per outer grid cell (CSV)"),
        ("integrate", "deterministic share trajectory (CSV)"),
        ("simulate", "finite-population run (CSV + summary JSON)"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the YAML experiment file")
        cmd.add_argument("--out", default=None, help="output path")
        cmd.add_argument("--seed", type=int, default=None, help="override the config seed")
        cmd.add_argument("--jobs", type=int, default=1, help="worker processes for grids")
        cmd.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override a config field by dotted path (repeatable)",
        )
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args.config, args.set)
        _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ModelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
