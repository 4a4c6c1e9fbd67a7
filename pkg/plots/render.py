#!/usr/bin/env python3
"""Render static comparison figures from experiment CSV outputs.

Driven by a JSON spec file holding one plot spec or a list of them.  A
spec names the input CSV, a figure kind, the columns to read, and the
output image path:

    {"input": "out/replicas.csv", "kind": "hist",
     "columns": ["largest_length"], "output": "hist.png"}

Kinds: "hist" (one column), "qq" (two columns, quantile-quantile with a
reference diagonal), "curve" (x column, y column; the y values are
averaged per distinct x and joined as a polyline).  Blank and non-numeric
cells are skipped.  Any problem -- unreadable file, unknown kind, column
missing from the CSV header, no numeric data -- aborts with a message on
stderr and a nonzero exit.

This tool only knows the CSV contract: a header row and one record per
line.  Output bytes are deterministic for identical input files (fixed
geometry, Agg backend, no embedded timestamps).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

FIGSIZE = (6.4, 4.8)
DPI = 100
_NCOLS = {"hist": 1, "qq": 2, "curve": 2}


class SpecError(ValueError):
    """Raised for any malformed spec or input; main() turns it into exit 1."""


def load_specs(path) -> list[dict]:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SpecError(f"spec file {path} is not valid JSON: {exc}")
    specs = raw if isinstance(raw, list) else [raw]
    for i, spec in enumerate(specs):
        if not isinstance(spec, dict):
            raise SpecError(f"spec #{i} is not an object")
        missing = {"input", "kind", "columns", "output"} - set(spec)
        if missing:
            raise SpecError(f"spec #{i} lacks fields: {', '.join(sorted(missing))}")
        kind = spec["kind"]
        if kind not in _NCOLS:
            raise SpecError(f"spec #{i}: unknown kind {kind!r} "
                            f"(choose from {', '.join(sorted(_NCOLS))})")
        cols = spec["columns"]
        if not isinstance(cols, list) or len(cols) != _NCOLS[kind]:
            raise SpecError(f"spec #{i}: kind {kind!r} needs exactly "
                            f"{_NCOLS[kind]} column(s), got {cols!r}")
    return specs


def read_columns(csv_path, columns: list[str]) -> dict[str, np.ndarray]:
    try:
        with open(csv_path, newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            for col in columns:
                if col not in header:
                    raise SpecError(
                        f"column {col!r} not in {csv_path} "
                        f"(header: {', '.join(header) or 'empty'})"
                    )
            rows = list(reader)
    except OSError as exc:
        raise SpecError(f"cannot read {csv_path}: {exc}")
    out = {}
    for col in columns:
        vals = []
        for row in rows:
            cell = (row.get(col) or "").strip()
            try:
                x = float(cell)
            except ValueError:
                continue
            if math.isfinite(x):
                vals.append(x)
        if not vals:
            raise SpecError(f"column {col!r} of {csv_path} has no numeric data")
        out[col] = np.array(vals)
    return out


def quantile_pairs(a: np.ndarray, b: np.ndarray, points: int = 101):
    qs = np.linspace(0.0, 1.0, points)
    return np.quantile(a, qs), np.quantile(b, qs)


def curve_points(x: np.ndarray, y: np.ndarray):
    """Mean of y per distinct x, sorted by x."""
    n = min(len(x), len(y))
    x, y = x[:n], y[:n]
    xs = np.unique(x)
    return xs, np.array([y[x == v].mean() for v in xs])


def render(spec: dict) -> Path:
    data = read_columns(spec["input"], spec["columns"])
    kind = spec["kind"]
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    try:
        if kind == "hist":
            (col,) = spec["columns"]
            ax.hist(data[col], bins=40, color="#4878a8", edgecolor="white")
            ax.set_xlabel(col)
            ax.set_ylabel("count")
        elif kind == "qq":
            ca, cb = spec["columns"]
            qa, qb = quantile_pairs(data[ca], data[cb])
            lo = min(qa[0], qb[0])
            hi = max(qa[-1], qb[-1])
            ax.plot([lo, hi], [lo, hi], color="#999999", lw=1, zorder=1)
            ax.plot(qa, qb, "o", ms=3, color="#a84848", zorder=2)
            ax.set_xlabel(f"{ca} quantiles")
            ax.set_ylabel(f"{cb} quantiles")
        else:
            cx, cy = spec["columns"]
            xs, ys = curve_points(data[cx], data[cy])
            ax.plot(xs, ys, "o-", color="#48a878")
            ax.set_xlabel(cx)
            ax.set_ylabel(f"mean {cy}")
        ax.set_title(f"{kind}: {Path(spec['input']).name}")
        out = Path(spec["output"])
        out.parent.mkdir(parents=True, exist_ok=True)
        # "Software" metadata would pin the matplotlib version string but
        # nothing else varies; drop it so identical inputs give identical bytes
        fig.savefig(out, format="png", metadata={"Software": None})
    finally:
        plt.close(fig)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        description="render experiment CSV columns as static figures"
    )
    parser.add_argument("--spec", required=True, help="JSON plot spec file")
    args = parser.parse_args(argv)
    try:
        specs = load_specs(args.spec)
        for spec in specs:
            path = render(spec)
            print(path)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
