"""Render figures from metrics and bound-experiment CSVs.

Figures land next to the CSV unless an output directory is given, so a
benchmark run leaves the delimited data and its plots side by side.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def _read_rows(csv_path: Path) -> list[dict[str, str]]:
    with open(csv_path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def render_run_figures(
    csv_path: str | Path, out_dir: str | Path | None = None
) -> list[Path]:
    """Per-batch timing, change-size, and growth figures for a run."""
    csv_path = Path(csv_path)
    out = Path(out_dir) if out_dir is not None else csv_path.parent
    out.mkdir(parents=True, exist_ok=True)
    rows = _read_rows(csv_path)
    stem = csv_path.stem
    written: list[Path] = []
    if not rows:
        return written

    iters = [int(r["iteration"]) for r in rows]
    t_new = [float(r["time_new_ms"]) for r in rows]
    t_sub = [float(r["time_sub_ms"]) for r in rows]
    t_total = [float(r["time_total_ms"]) for r in rows]
    change = [int(r["change_edges"]) for r in rows]
    store = [int(r["store_count"]) for r in rows]
    edges = [int(r["graph_edges"]) for r in rows]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(iters, t_total, label="total", lw=1.6)
    ax.plot(iters, t_new, label="new", lw=1.1)
    ax.plot(iters, t_sub, label="subsumed", lw=1.1)
    ax.set_xlabel("iteration")
    ax.set_ylabel("time per batch (ms)")
    ax.set_title("Computation time per batch")
    ax.legend()
    fig.tight_layout()
    path = out / f"{stem}_times.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.scatter(change, t_total, s=14, alpha=0.7)
    ax.set_xlabel("size of change (edges in changed bicliques)")
    ax.set_ylabel("time per batch (ms)")
    ax.set_title("Change-sensitiveness")
    fig.tight_layout()
    path = out / f"{stem}_change_vs_time.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(iters, store, label="maintained bicliques", lw=1.4)
    ax.plot(iters, edges, label="graph edges", lw=1.4, ls="--")
    ax.set_xlabel("iteration")
    ax.set_ylabel("count")
    ax.set_title("Store and graph growth")
    ax.legend()
    fig.tight_layout()
    path = out / f"{stem}_growth.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    written.append(path)

    return written


def render_bound_figures(
    csv_path: str | Path, out_dir: str | Path | None = None
) -> list[Path]:
    """Observed vs predicted change magnitude for the extremal instances."""
    csv_path = Path(csv_path)
    out = Path(out_dir) if out_dir is not None else csv_path.parent
    out.mkdir(parents=True, exist_ok=True)
    rows = _read_rows(csv_path)
    if not rows:
        return []

    ns = [int(r["n"]) for r in rows]
    observed = [int(r["observed"]) for r in rows]
    predicted = [int(r["predicted"]) for r in rows]

    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.plot(ns, predicted, "o-", label="predicted 3*2^((n-2)/2)")
    ax.plot(ns, observed, "x--", label="observed")
    ax.set_xlabel("vertices n")
    ax.set_ylabel("size of change for one edge")
    ax.set_yscale("log", base=2)
    ax.set_title("Single-edge worst-case change")
    ax.legend()
    fig.tight_layout()
    path = out / f"{csv_path.stem}_bound.png"
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return [path]
