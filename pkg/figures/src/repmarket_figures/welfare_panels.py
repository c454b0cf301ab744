"""Three-panel welfare maps: buyers, all sellers, good sellers.

fig5: sweep CSV over (alpha, beta); collapsed-market cells masked via the
      ``feasible`` column when present.
s4:   optimize CSV over (r, s); welfare is evaluated at the per-cell optimal
      operating point by the CLI, zero-profit cells masked.
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

LAYOUT = {
    "fig5": {
        "axes": ("alpha", "beta"),
        "panels": ("u_buyer", "u_seller", "u_good_seller"),
        "mask": "feasible",
    },
    "s4": {
        "axes": ("r", "s"),
        "panels": ("u_buyer_star", "u_seller_star", "u_good_seller_star"),
        "mask": "profit_star",
    },
}


def main(argv=None) -> int:
    parser = base_parser(__doc__, ("fig5", "s4"))
    args = parser.parse_args(argv)

    def render():
        require_output(args)
        spec = LAYOUT[args.figure]
        x_col, y_col = spec["axes"]
        table = load_table(args.input[0])
        table.require(x_col, y_col, *spec["panels"])
        columns = [x_col, y_col, *spec["panels"]]
        has_mask = spec["mask"] in table.header
        if has_mask:
            columns.append(spec["mask"])
        if args.dump_values:
            dump_rows(columns, zip(*(table.raw(c) for c in columns)))
            return
        mask = None
        xs = ys = None
        if has_mask:
            xs, ys, mask_grid = pivot_grid(table, x_col, y_col, spec["mask"])
            mask = mask_grid == 0.0
        fig, axes = plt.subplots(3, 1, figsize=(5.0, 10.5), constrained_layout=True)
        for ax, panel in zip(axes, spec["panels"]):
            xs, ys, grid = pivot_grid(table, x_col, y_col, panel)
            heatmap_panel(ax, xs, ys, grid, mask=mask, label=panel)
            ax.set_xlabel(x_col)
            ax.set_ylabel(y_col)
        axes[0].set_title("participant welfare")
        save_figure(fig, args.output)

    return run_script(render)


if __name__ == "__main__":
    raise SystemExit(main())
