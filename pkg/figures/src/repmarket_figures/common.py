"""Shared plumbing for the figure scripts.

Every script reads artifacts emitted by the ``repmarket`` CLI, keeps the raw
cell strings it uses (so ``--dump-values`` can echo them byte-for-byte), and
never recomputes model quantities. Rendering is headless and deterministic:
two runs over the same inputs produce identical image bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

#: zero-profit / collapsed-market cells are drawn in this reserved color
DEAD_COLOR = "black"


class SchemaError(Exception):
    """An input file does not match its documented schema."""


class Table:
    """A CSV artifact with raw string cells and float views on demand."""

    def __init__(self, path: str, header: list[str], rows: list[list[str]]):
        self.path = path
        self.header = header
        self.rows = rows
        self._index = {name: i for i, name in enumerate(header)}

    def require(self, *columns: str) -> None:
        for name in columns:
            if name not in self._index:
                raise SchemaError(f"{self.path}: missing column {name!r}")

    def raw(self, column: str) -> list[str]:
        i = self._index[column]
        return [row[i] for row in self.rows]

    def floats(self, column: str) -> np.ndarray:
        values = []
        i = self._index[column]
        for n, row in enumerate(self.rows, start=2):
            cell = row[i]
            try:
                values.append(float(cell) if cell != "" else np.nan)
            except ValueError as exc:
                raise SchemaError(
                    f"{self.path}:{n}: column {column!r} has non-numeric value {cell!r}"
                ) from exc
        return np.asarray(values)


def load_table(path: str) -> Table:
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: empty file") from None
            rows = [row for row in reader]
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read: {exc}") from exc
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    for n, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise SchemaError(f"{path}:{n}: expected {len(header)} cells, got {len(row)}")
    return Table(path, header, rows)


def load_summary(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return doc


def summary_field(doc: dict, path: str, *keys):
    node = doc
    trail = []
    for key in keys:
        trail.append(str(key))
        if not isinstance(node, dict) or key not in node:
            raise SchemaError(f"{path}: missing field {'.'.join(trail)}")
        node = node[key]
    return node


def pivot_grid(table: Table, x_col: str, y_col: str, value_col: str):
    """Reshape a row-major long table into (xs, ys, Z) for a heatmap."""
    table.require(x_col, y_col, value_col)
    x = table.floats(x_col)
    y = table.floats(y_col)
    z = table.floats(value_col)
    xs = np.unique(x)
    ys = np.unique(y)
    if len(xs) * len(ys) != len(z):
        raise SchemaError(
            f"{table.path}: rows do not form a full {len(xs)}x{len(ys)} grid over "
            f"({x_col}, {y_col})"
        )
    order = np.lexsort((y, x))
    return xs, ys, z[order].reshape(len(xs), len(ys))


def heatmap_panel(ax, xs, ys, grid, mask=None, label=""):
    """One pcolormesh panel; masked cells use the reserved dead color."""
    data = np.ma.masked_invalid(grid)
    if mask is not None:
        data = np.ma.masked_where(mask, data)
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad(DEAD_COLOR)
    mesh = ax.pcolormesh(xs, ys, data.T, cmap=cmap, shading="nearest")
    ax.figure.colorbar(mesh, ax=ax, label=label)
    return mesh


def save_figure(fig, output: str) -> None:
    fig.savefig(output, dpi=150)
    plt.close(fig)


def dump_rows(columns: list[str], rows) -> None:
    out = sys.stdout
    out.write(",".join(columns) + "\n")
    for row in rows:
        out.write(",".join(row) + "\n")


def base_parser(description: str, figures: tuple[str, ...]) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument(
        "--input",
        action="append",
        required=True,
        metavar="PATH",
        help="input artifact (repeatable)",
    )
    parser.add_argument("--output", default=None, metavar="PATH", help="image file to write")
    parser.add_argument(
        "--figure",
        choices=figures,
        default=figures[0],
        help="which figure analog to render",
    )
    parser.add_argument(
        "--dump-values",
        action="store_true",
        help="print the plotted values verbatim instead of rendering",
    )
    return parser


def run_script(render) -> int:
    """Execute a script body, mapping schema problems to a nonzero exit."""
    try:
        render()
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    return 0


def require_output(args) -> None:
    if not args.dump_values and not args.output:
        raise SchemaError("--output is required unless --dump-values is given")
