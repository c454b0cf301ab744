"""Single-quantity heatmaps over the (alpha, beta) plane.

fig1: equilibrium commission revenue from a sweep CSV, collapsed-market cells
      in the reserved color (mask from the ``feasible`` column when present,
      else from zero revenue).
fig2: signaling cost from a sweep CSV; the free set shows up as the zero
      plateau.
"""

from __future__ import annotations

import matplotlib.pyplot as plt

from .common import (
    base_parser,
    dump_rows,
    heatmap_panel,
    load_table,
    pivot_grid,
    require_output,
    run_script,
    save_figure,
)

QUANTITY = {"fig1": "revenue", "fig2": "cost"}


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("fig1", "fig2"))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        table = load_table(args.input[0])
        quantity = QUANTITY[args.figure]
        table.require("alpha", "beta", quantity)
        columns = ["alpha", "beta", quantity]
        if args.figure == "fig1" and "feasible" in table.header:
            columns.append("feasible")
        if args.dump_values:
            dump_rows(columns, zip(*(table.raw(c) for c in columns)))
            return
        xs, ys, grid = pivot_grid(table, "alpha", "beta", quantity)
        if args.figure == "fig1":
            if "feasible" in table.header:
                _, _, feasible = pivot_grid(table, "alpha", "beta", "feasible")
                mask = feasible == 0.0
            else:
                mask = grid == 0.0
        else:
            mask = None
        fig, ax = plt.subplots(figsize=(5.2, 4.2), constrained_layout=True)
        heatmap_panel(ax, xs, ys, grid, mask=mask, label=quantity)
        ax.set_xlabel("true-positive rate")
        ax.set_ylabel("false-positive rate")
        title = "platform revenue" if args.figure == "fig1" else "signaling cost"
        ax.set_title(title)
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
