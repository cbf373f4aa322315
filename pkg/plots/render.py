#!/usr/bin/env python3
"""Render convergence panels and the variant-comparison table from run outputs.

Consumes the files the ``lisa-pointing`` CLI writes (``traces.csv``,
``summary.json``, optionally ``table1.csv``) and produces:

* ``convergence_y12.png`` / ``_y13`` / ``_y23`` - per-pair trajectory fans:
  every realization as a faint line, the 10-90 percentile band shaded, the
  median emphasized, a vertical marker at t*, and an inset histogram of the
  misalignments measured at t*;
* ``table.md`` - the per-variant mean misalignments, echoed cell for cell.

These scripts are pure readers: statistics that ``summary.json`` provides
(percentile curves, t*, histogram counts) are drawn as-is, never recomputed.
Only with an explicit ``--bins`` override is the inset re-binned from the raw
trace values at t*. Usage::

    render.py --traces traces.csv --summary summary.json --out dir/
              [--table1 table1.csv] [--log-y] [--bins N]
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

PAIR_NAMES = ("y12", "y13", "y23")
REQUIRED_TRACE_COLUMNS = ("realization", "iteration", "y12", "y13", "y23", "h1", "h2", "h3")


class SchemaError(ValueError):
    """Input file does not match the documented schema."""


@dataclass(frozen=True)
class PlotSpec:
    """What to read, where to draw, and how."""

    traces: Path
    summary: Path
    out_dir: Path
    table1: Path | None = None
    log_y: bool = False
    bins: int | None = None


def load_summary(path: Path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"summary file not found: {path}")
    doc = json.loads(path.read_text(encoding="utf-8"))
    for key in ("t_star_iter", "percentiles", "histogram", "mean_y_at_t_star"):
        if key not in doc:
            raise SchemaError(f"summary.json missing required key: {key}")
    return doc


def load_traces(path: Path) -> pd.DataFrame:
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"traces file not found: {path}")
    df = pd.read_csv(path)
    missing = [c for c in REQUIRED_TRACE_COLUMNS if c not in df.columns]
    if missing:
        raise SchemaError(
            "traces.csv missing required column(s): " + ", ".join(missing)
        )
    return df


def _draw_panel(pair, traces, summary, out_dir, log_y, bins):
    t_star = int(summary["t_star_iter"])
    iters = np.arange(1, int(traces["iteration"].max()) + 1)
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    for _, group in traces.groupby("realization"):
        ax.plot(
            group["iteration"], group[pair],
            color="steelblue", alpha=0.06, linewidth=0.5, zorder=1,
        )
    p10 = np.asarray(summary["percentiles"]["p10"][pair])
    p50 = np.asarray(summary["percentiles"]["p50"][pair])
    p90 = np.asarray(summary["percentiles"]["p90"][pair])
    ax.fill_between(
        iters[: len(p10)], p10, p90,
        color="steelblue", alpha=0.35, label="10-90 percentile", zorder=2,
    )
    ax.plot(iters[: len(p50)], p50, color="navy", linewidth=1.6,
            label="median", zorder=3)
    ax.axvline(t_star, color="crimson", linestyle="--", linewidth=1.2,
               label=f"t* = {t_star}")
    ax.axhline(summary.get("threshold_murad", 1.0), color="gray",
               linestyle=":", linewidth=1.0)
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel("iteration (17 s each)")
    ax.set_ylabel(f"{pair} [murad]")
    ax.set_title(f"misalignment {pair}: {traces['realization'].nunique()} realizations")
    ax.legend(loc="upper right", fontsize=8)

    inset = ax.inset_axes([0.58, 0.45, 0.38, 0.3])
    if bins is None:
        edges = np.asarray(summary["histogram"]["edges"])
        counts = np.asarray(summary["histogram"]["counts"][pair])
        inset.bar(
            edges[:-1], counts, width=np.diff(edges),
            align="edge", color="steelblue", edgecolor="white", linewidth=0.3,
        )
    else:
        at_tstar = traces.loc[traces["iteration"] == t_star, pair]
        inset.hist(at_tstar, bins=bins, color="steelblue",
                   edgecolor="white", linewidth=0.3)
    inset.set_title(f"{pair} at t*", fontsize=7)
    inset.tick_params(labelsize=6)

    out_path = out_dir / f"convergence_{pair}.png"
    fig.savefig(out_path, dpi=130)
    plt.close(fig)
    return out_path


def render_convergence(spec: PlotSpec) -> dict[str, Path]:
    """One panel per spacecraft pair; returns the written image paths."""
    traces = load_traces(spec.traces)
    summary = load_summary(spec.summary)
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return {
        pair: _draw_panel(pair, traces, summary, out_dir, spec.log_y, spec.bins)
        for pair in PAIR_NAMES
    }


def render_table(spec: PlotSpec) -> Path:
    """Echo ``table1.csv`` as a markdown table, cell strings untouched."""
    if spec.table1 is None:
        raise SchemaError("no table file given")
    table1_path = Path(spec.table1)
    if not table1_path.is_file():
        raise SchemaError(f"table file not found: {table1_path}")
    lines = table1_path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise SchemaError("table1.csv is empty")
    header = lines[0].split(",")
    if header[0] != "pair":
        raise SchemaError("table1.csv missing required column: pair")
    value_columns = header[1:]
    if not value_columns:
        raise SchemaError(
            "table1.csv missing variant columns: expected full_mean_murad "
            "and/or baseline_mean_murad"
        )
    out_dir = Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    md = ["| " + " | ".join(header) + " |",
          "|" + "|".join("---" for _ in header) + "|"]
    for line in lines[1:]:
        if line.strip():
            md.append("| " + " | ".join(line.split(",")) + " |")
    if len(value_columns) < 2:
        md.append("")
        md.append(f"(single variant only: {value_columns[0]})")
    out_path = out_dir / "table.md"
    out_path.write_text("\n".join(md) + "\n", encoding="utf-8")
    return out_path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--traces", required=True, metavar="CSV")
    parser.add_argument("--summary", required=True, metavar="JSON")
    parser.add_argument("--out", required=True, metavar="DIR")
    parser.add_argument("--table1", metavar="CSV", help="ablation table to echo")
    parser.add_argument("--log-y", action="store_true", dest="log_y")
    parser.add_argument(
        "--bins", type=int, metavar="N",
        help="re-bin the t* histogram from raw traces instead of summary counts",
    )
    args = parser.parse_args(argv)
    spec = PlotSpec(
        traces=Path(args.traces),
        summary=Path(args.summary),
        out_dir=Path(args.out),
        table1=Path(args.table1) if args.table1 else None,
        log_y=args.log_y,
        bins=args.bins,
    )
    try:
        outputs = render_convergence(spec)
        for pair, path in outputs.items():
            print(f"wrote {pair} panel: {path}")
        if spec.table1 is not None:
            table = render_table(spec)
            print(f"wrote table: {table}")
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
