"""Result serialization: per-iteration traces, campaign summary, ablation table.

All files are plain UTF-8 with ``.`` decimals and 17-significant-digit
floats, so runs can be diffed and downstream consumers lose nothing.
Schemas are fixed:

* ``traces.csv``  - columns ``realization,iteration,y12,y13,y23,h1,h2,h3``;
  one row per realization per iteration, realizations 0-based in campaign
  order, iterations 1-based.
* ``summary.json`` - single object with the campaign statistics, the raw
  config echo and a code+config fingerprint.
* ``table1.csv``  - columns ``pair,full_mean_murad,baseline_mean_murad``;
  written only by paired ablation runs.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Iterable

from . import __version__
from .harness import CampaignSummary, RealizationResult

__all__ = [
    "emit_results",
    "write_traces_csv",
    "write_summary_json",
    "write_table1_csv",
    "fingerprint",
]

TRACES_HEADER = "realization,iteration,y12,y13,y23,h1,h2,h3"
TABLE1_HEADER = "pair,full_mean_murad,baseline_mean_murad"
PAIR_NAMES = ("y12", "y13", "y23")

_CHUNK_ROWS = 200_000


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def fingerprint(config_echo: dict[str, Any]) -> str:
    """Hash of the package sources, version and configuration.

    Identical code plus identical config implies an identical fingerprint,
    so summaries can be traced back to what produced them.
    """
    digest = hashlib.sha256()
    digest.update(__version__.encode())
    pkg_dir = Path(__file__).parent
    for src in sorted(pkg_dir.glob("*.py")):
        digest.update(src.name.encode())
        digest.update(src.read_bytes())
    digest.update(json.dumps(config_echo, sort_keys=True).encode())
    return digest.hexdigest()[:16]


def write_traces_csv(path: Path, results: Iterable[RealizationResult]) -> Path:
    """Stream all realizations' per-iteration traces to one CSV file."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(TRACES_HEADER + "\n")
        rows: list[str] = []
        for ridx, res in enumerate(results):
            y, h = res.y_traces, res.h_traces
            for k in range(res.K):
                rows.append(
                    f"{ridx},{k + 1},{_fmt(y[k, 0])},{_fmt(y[k, 1])},{_fmt(y[k, 2])},"
                    f"{_fmt(h[k, 0])},{_fmt(h[k, 1])},{_fmt(h[k, 2])}"
                )
                if len(rows) >= _CHUNK_ROWS:
                    fh.write("\n".join(rows) + "\n")
                    rows.clear()
        if rows:
            fh.write("\n".join(rows) + "\n")
    return path


def summary_to_dict(summary: CampaignSummary, config_echo: dict[str, Any]) -> dict[str, Any]:
    pairs = PAIR_NAMES
    return {
        "schema_version": 1,
        "fingerprint": fingerprint(config_echo),
        "config": config_echo,
        "n_realizations": summary.n_realizations,
        "iterations": summary.K,
        "threshold_murad": summary.threshold,
        "t_star_iter": summary.t_star_iter,
        "t_star_minutes": summary.t_star_minutes,
        "t_star_source": summary.t_star_source,
        "mean_y_at_t_star": {
            name: float(summary.mean_y_at_t_star[p]) for p, name in enumerate(pairs)
        },
        "percentiles": {
            f"p{level}": {
                name: [float(v) for v in curve[:, p]]
                for p, name in enumerate(pairs)
            }
            for level, curve in sorted(summary.percentiles.items())
        },
        "histogram": {
            "edges": [float(e) for e in summary.histogram_edges],
            "counts": {
                name: [int(c) for c in summary.histogram_counts[p]]
                for p, name in enumerate(pairs)
            },
        },
        "unconverged_seeds": list(summary.unconverged_seeds),
    }


def write_summary_json(
    path: Path, summary: CampaignSummary, config_echo: dict[str, Any]
) -> Path:
    path = Path(path)
    doc = summary_to_dict(summary, config_echo)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_table1_csv(
    path: Path, full_summary: CampaignSummary, baseline_summary: CampaignSummary
) -> Path:
    """Side-by-side per-pair means at the evaluation iteration."""
    path = Path(path)
    lines = [TABLE1_HEADER]
    for p, name in enumerate(PAIR_NAMES):
        lines.append(
            f"{name},{_fmt(full_summary.mean_y_at_t_star[p])},"
            f"{_fmt(baseline_summary.mean_y_at_t_star[p])}"
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def emit_results(
    results: list[RealizationResult],
    summary: CampaignSummary,
    output_dir: Path,
    config_echo: dict[str, Any],
) -> dict[str, Path]:
    """Write ``traces.csv`` and ``summary.json`` into ``output_dir``."""
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        paths = {
            "traces": write_traces_csv(out / "traces.csv", results),
            "summary": write_summary_json(out / "summary.json", summary, config_echo),
        }
    except OSError as exc:
        raise RuntimeError(f"cannot write results under {out}: {exc}") from exc
    return paths
