"""Matplotlib figure output for the CLI report paths (file rendering only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .langs import SampledLanguage
from .measure import ProbabilityTable
from .rules import OrbitTrace


def save_spacetime_figure(trace: OrbitTrace, path: str):
    """Space-time raster with time upward, one row per step."""
    grid = np.array([row.letters for row in trace.rows])
    fig, ax = plt.subplots(figsize=(6, 4))
    k = trace.rule.alphabet.size
    ax.imshow(
        grid, origin="lower", cmap="gray", vmin=0, vmax=max(k - 1, 1),
        aspect="auto", interpolation="nearest",
        extent=(-trace.half_window - 0.5, trace.half_window + 0.5,
                -0.5, len(trace.rows) - 0.5),
    )
    ax.set_xlabel("cell (relative to the curve)")
    ax.set_ylabel("time")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_decay_figure(table: ProbabilityTable, path: str):
    """Per-word probability trajectories over time."""
    fig, ax = plt.subplots(figsize=(6, 4))
    words = sorted(table.rows[0], key=lambda w: w.letters)
    ts = range(len(table.rows))
    for w in words:
        ax.plot(ts, [float(row[w]) for row in table.rows], label=w.text())
    ax.set_xlabel("t")
    ax.set_ylabel("probability")
    ax.set_yscale("log")
    if len(words) <= 10:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_histogram_figure(sampled: SampledLanguage, path: str, top: int = 20):
    """Bar chart of the most frequent observed windows."""
    items = sorted(sampled.histogram.items(), key=lambda kv: (-kv[1], kv[0].letters))
    items = items[:top]
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [w.text() for w, _ in items]
    ax.bar(range(len(items)), [c for _, c in items])
    ax.set_xticks(range(len(items)))
    ax.set_xticklabels(labels, rotation=60, fontsize=7)
    ax.set_ylabel("observations")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
