"""s2: quasi-stationary mode of the good-seller share versus the
false-positive rate, one summary JSON per simulated run, with the analytic
equilibrium share (as recorded by the CLI) for comparison."""

from __future__ import annotations

import json
import sys

import matplotlib.pyplot as plt

from .common import (
    base_parser,
    load_summary,
    require_output,
    run_script,
    save_figure,
    summary_field,
)


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("s2",))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        points = []
        for path in args.input:
            doc = load_summary(path)
            points.append(
                (
                    summary_field(doc, path, "policy", "beta"),
                    summary_field(doc, path, "mode_xi"),
                    summary_field(doc, path, "analytic", "xi_star"),
                )
            )
        points.sort(key=lambda p: p[0])
        if args.dump_values:
            sys.stdout.write("beta,mode_xi,analytic_xi_star\n")
            for beta, mode, star in points:
                sys.stdout.write(
                    f"{json.dumps(beta)},{json.dumps(mode)},{json.dumps(star)}\n"
                )
            return
        betas = [p[0] for p in points]
        fig, ax = plt.subplots(figsize=(5.2, 4.0), constrained_layout=True)
        ax.plot(betas, [p[1] for p in points], "o", color="tab:blue", label="empirical mode")
        analytic = [(b, s) for b, _, s in points if s is not None]
        if analytic:
            ax.plot(
                [b for b, _ in analytic],
                [s for _, s in analytic],
                "-",
                color="tab:orange",
                label="analytic equilibrium",
            )
        ax.set_xlabel("false-positive rate")
        ax.set_ylabel("good-seller share among active")
        ax.legend()
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
