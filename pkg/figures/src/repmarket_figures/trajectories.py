"""s1: seller-count trajectories of finite-population runs, one panel per
input CSV (e.g. one run per false-positive rate)."""

from __future__ import annotations

import matplotlib.pyplot as plt

from .common import (
    base_parser,
    dump_rows,
    load_table,
    require_output,
    run_script,
    save_figure,
)

SERIES = ("n_good", "n_bad", "n_inactive")


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("s1",))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        tables = [load_table(path) for path in args.input]
        for table in tables:
            table.require("period", *SERIES)
        if args.dump_values:
            for table in tables:
                columns = ["period", *SERIES]
                dump_rows(columns, zip(*(table.raw(c) for c in columns)))
            return
        fig, axes = plt.subplots(
            len(tables),
            1,
            figsize=(6.0, 2.8 * len(tables)),
            constrained_layout=True,
            squeeze=False,
        )
        for ax, table in zip(axes[:, 0], tables):
            periods = table.floats("period")
            for series, color in zip(SERIES, ("tab:green", "tab:red", "tab:gray")):
                ax.plot(periods, table.floats(series), color=color, label=series, lw=0.9)
            ax.set_xlabel("period")
            ax.set_ylabel("sellers")
            ax.set_title(table.path, fontsize=8)
            ax.legend(fontsize=7)
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
