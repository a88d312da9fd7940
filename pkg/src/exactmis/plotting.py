"""Figures for analysis reports and benchmark runs (written to files, never shown)."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import AnalysisReport  # noqa: E402


def _family(label: str) -> str:
    return label.split(" i=")[0].split(" k=")[0].split(" j=")[0]


def plot_factors(report: AnalysisReport, path: str | Path) -> Path:
    """Sorted branching factors per recurrence, colored by family, with the target line."""
    order = sorted(range(len(report.factors)), key=lambda i: report.factors[i])
    fams = sorted({_family(r.label) for r in report.recurrences})
    cmap = plt.get_cmap("tab10")
    color = {f: cmap(i % 10) for i, f in enumerate(fams)}
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for f in fams:
        xs = [k for k, i in enumerate(order) if _family(report.recurrences[i].label) == f]
        ys = [report.factors[order[k]] for k in xs]
        ax.scatter(xs, ys, s=8, color=color[f], label=f)
    ax.axhline(report.target, color="black", lw=0.8, ls="--", label=f"target {report.target:.5f}")
    ax.set_xlabel("recurrence (sorted by factor)")
    ax.set_ylabel("branching factor")
    ax.set_title(f"degree-{report.theta} catalog: max {report.max_factor:.6f} ({report.worst_label})", fontsize=9)
    lo = min(report.factors)
    ax.set_ylim(lo - 0.005, max(report.max_factor, report.target) + 0.003)
    ax.legend(fontsize=7, loc="upper left")
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def plot_bench(rows: Sequence[dict], path: str | Path, reference: float | None = None) -> Path:
    """Search-tree nodes against n on a log scale, one point per instance."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    groups: dict[str, list[dict]] = {}
    for r in rows:
        groups.setdefault(r["family"], []).append(r)
    for fam, rs in sorted(groups.items()):
        ax.scatter([r["n"] for r in rs], [max(r["nodes"], 1) for r in rs], s=14, label=fam)
    if reference is not None and rows:
        ns = sorted({r["n"] for r in rows})
        ax.plot(ns, [reference ** n for n in ns], color="gray", lw=0.8, ls="--", label=f"{reference}^n")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("search nodes")
    ax.legend(fontsize=8)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out


def plot_history(history: Sequence[float], path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 3.5))
    finite = [h for h in history if math.isfinite(h)]
    ax.plot(range(len(history)), [h if math.isfinite(h) else float("nan") for h in history], marker="o")
    if finite:
        ax.set_ylim(min(finite) - 1e-4, max(finite) + 1e-4)
    ax.set_xlabel("round")
    ax.set_ylabel("max factor")
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
