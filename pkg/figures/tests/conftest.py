import subprocess

import pytest


def cli(args, cwd):
    proc = subprocess.run(
        ["repmarket", *args], cwd=cwd, capture_output=True, text=True
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def artifacts(tmp_path_factory):
    """Small but schema-complete artifacts produced through the repmarket CLI."""
    root = tmp_path_factory.mktemp("artifacts")

    (root / "sweep_ab.yaml").write_text(
        """\
market: {r: 0.85, c: 0.72}
cost: {alpha0: 0.6, beta0: 0.4, kappa: 0.5, p: 2, q: 0.5}
grid:
  x: {axis: alpha, min: 0.05, max: 0.95, steps: 10}
  y: {axis: beta, min: 0.05, max: 0.95, steps: 9}
quantities: [revenue, cost, profit, feasible]
"""
    )
    cli(["sweep", "--config", "sweep_ab.yaml", "--out", "sweep_ab.csv"], root)

    (root / "sweep_welfare.yaml").write_text(
        """\
market: {r: 0.85, c: 0.72}
grid:
  x: {axis: alpha, min: 0.05, max: 0.95, steps: 10}
  y: {axis: beta, min: 0.05, max: 0.95, steps: 9}
quantities: [u_buyer, u_seller, u_good_seller, feasible]
"""
    )
    cli(["sweep", "--config", "sweep_welfare.yaml", "--out", "sweep_welfare.csv"], root)

    (root / "opt_rk.yaml").write_text(
        """\
market: {c: 0.45}
cost: {alpha0: 0.6, beta0: 0.4, p: 2, q: 0.5}
outer:
  x: {axis: r, min: 0.35, max: 0.9, steps: 3}
  y: {axis: kappa, min: 0.1, max: 0.9, steps: 3}
search: {resolution: 0.03125}
"""
    )
    cli(["optimize", "--config", "opt_rk.yaml", "--out", "opt_rk.csv"], root)

    (root / "opt_rs.yaml").write_text(
        """\
cost: {alpha0: 0.6, beta0: 0.4, kappa: 0.2, p: 2, q: 0.5}
outer:
  x: {axis: r, min: 0.55, max: 0.9, steps: 3}
  y: {axis: s, min: 0.2, max: 0.8, steps: 3}
search: {resolution: 0.03125}
"""
    )
    cli(["optimize", "--config", "opt_rs.yaml", "--out", "opt_rs.csv"], root)

    (root / "opt_commission.yaml").write_text(
        """\
cost: {alpha0: 0.6, beta0: 0.4, kappa: 0.2, p: 2, q: 0.5}
outer:
  x: {axis: r, min: 0.6, max: 0.9, steps: 4}
  y: {axis: kappa, min: 0.2, max: 0.2, steps: 1}
search:
  resolution: 0.03125
  commission: {min: 0.1, max: 0.9, steps: 9}
"""
    )
    cli(["optimize", "--config", "opt_commission.yaml", "--out", "opt_commission.csv"], root)

    sim_template = """\
market: {{r: 0.85, c: 0.72}}
policy: {{alpha: 0.6, beta: {beta}}}
sim:
  n_sellers: 100
  lambda_per_seller: 30.0
  sigma: 4.0
  periods: 240
  seed: 5
  initial: {{x_good: 0.34, x_bad: 0.33, x_inactive: 0.33}}
summary: {{bins: 40}}
"""
    for tag, beta in (("b00", 0.0), ("b02", 0.2), ("b03", 0.3)):
        (root / f"sim_{tag}.yaml").write_text(sim_template.format(beta=beta))
        cli(["simulate", "--config", f"sim_{tag}.yaml", "--out", f"sim_{tag}.csv"], root)

    gap_template = """\
market: {market}
policy: {policy}
grid:
  x: {{axis: xi, min: 0.02, max: 0.98, steps: 33}}
  y: {{axis: beta, min: {beta}, max: {beta}, steps: 1}}
quantities: [delta]
"""
    (root / "gap_left.yaml").write_text(
        gap_template.format(market="{r: 0.9, c: 0.1}", policy="{alpha: 0.6, beta: 0.3}", beta=0.3)
    )
    (root / "gap_right.yaml").write_text(
        gap_template.format(market="{r: 0.7, c: 0.1}", policy="{alpha: 0.5, beta: 0.4}", beta=0.4)
    )
    cli(["sweep", "--config", "gap_left.yaml", "--out", "gap_left.csv"], root)
    cli(["sweep", "--config", "gap_right.yaml", "--out", "gap_right.csv"], root)

    return root
