"""s5: good-minus-bad payoff gap across the good-seller share, one panel per
input sweep CSV (swept over xi with the delta quantity)."""

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


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("s5",))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        tables = [load_table(path) for path in args.input]
        for table in tables:
            table.require("xi", "delta")
        if args.dump_values:
            for table in tables:
                dump_rows(["xi", "delta"], zip(table.raw("xi"), table.raw("delta")))
            return
        fig, axes = plt.subplots(
            1,
            len(tables),
            figsize=(4.6 * len(tables), 3.6),
            constrained_layout=True,
            squeeze=False,
        )
        for ax, table in zip(axes[0], tables):
            ax.plot(table.floats("xi"), table.floats("delta"), lw=1.2)
            ax.axhline(0.0, color="gray", lw=0.6)
            ax.set_xlabel("good-seller share among active")
            ax.set_ylabel("payoff gap (good - bad)")
            ax.set_title(table.path, fontsize=8)
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
