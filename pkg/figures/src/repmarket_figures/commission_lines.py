"""s3: jointly optimal commission ratio and signal rates as functions of the
good-faith transaction benefit, from an optimize CSV with an s_star column."""

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

SERIES = ("s_star", "alpha_star", "beta_star")


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("s3",))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        table = load_table(args.input[0])
        table.require("r", *SERIES)
        columns = ["r", *SERIES]
        if args.dump_values:
            dump_rows(columns, zip(*(table.raw(c) for c in columns)))
            return
        r = table.floats("r")
        fig, axes = plt.subplots(3, 1, figsize=(5.0, 8.5), constrained_layout=True)
        for ax, series in zip(axes, SERIES):
            ax.plot(r, table.floats(series), "o-", ms=3)
            ax.set_ylabel(series)
            ax.set_ylim(0.0, 1.0)
        axes[-1].set_xlabel("r")
        axes[0].set_title("jointly optimal commission ratio and signal rates")
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
