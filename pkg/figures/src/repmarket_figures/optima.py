"""Three-panel maps of the profit-maximizing operating point.

fig3: optimize CSV over an (r, kappa) outer grid.
fig4: optimize CSV over an (r, s) outer grid.

Panels show maximal profit and the optimal true-/false-positive rates;
zero-profit cells are drawn in the reserved color in all panels.
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

AXES = {"fig3": ("r", "kappa"), "fig4": ("r", "s")}
PANELS = ("profit_star", "alpha_star", "beta_star")


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("fig3", "fig4"))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        table = load_table(args.input[0])
        x_col, y_col = AXES[args.figure]
        table.require(x_col, y_col, *PANELS)
        columns = [x_col, y_col, *PANELS]
        if args.dump_values:
            dump_rows(columns, zip(*(table.raw(c) for c in columns)))
            return
        xs, ys, profit = pivot_grid(table, x_col, y_col, "profit_star")
        dead = profit == 0.0
        fig, axes = plt.subplots(3, 1, figsize=(5.0, 10.5), constrained_layout=True)
        for ax, panel in zip(axes, PANELS):
            _, _, grid = pivot_grid(table, x_col, y_col, panel)
            heatmap_panel(ax, xs, ys, grid, mask=dead, label=panel)
            ax.set_xlabel(x_col)
            ax.set_ylabel(y_col)
        axes[0].set_title("maximal profit and optimal signal rates")
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
