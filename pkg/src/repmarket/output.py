"""Deterministic CSV/JSON emission for experiment artifacts.

Floats are printed with 12 significant digits so identical runs produce
byte-identical files; empty cells encode missing values (e.g. xi when no
seller is active).
"""

from __future__ import annotations

import json
import math
from typing import Any


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int,)):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return f"{value:.12g}"
    return str(value)


def write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_value(v) for v in row) + "\n")


def json_document(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def write_json(path: str, doc: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json_document(doc))
