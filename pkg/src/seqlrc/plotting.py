"""PNG charts for the report paths (headless matplotlib)."""

from __future__ import annotations

from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .recovery import ErasurePattern, RecoveryTrace  # noqa: E402
from .report import CatalogEntry, RateRow  # noqa: E402


def plot_catalog(entries: Sequence[CatalogEntry], path: str) -> None:
    """Rate against erasure tolerance, one marker series per field."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for q, marker in ((3, "o"), (5, "s")):
        pts = [(e.t, float(e.rate)) for e in entries if e.q == q and e.error is None]
        if pts:
            t, rate = zip(*pts)
            ax.scatter(t, rate, marker=marker, label=f"q = {q}", alpha=0.8)
    bad = [(e.t, float(e.rate)) for e in entries if not e.match and e.error is None]
    if bad:
        t, rate = zip(*bad)
        ax.scatter(t, rate, facecolors="none", edgecolors="red", s=120, label="mismatch")
    ax.set_xlabel("t (sequential erasures)")
    ax.set_ylabel("rate k/n")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_rates(rows: Sequence[RateRow], r: int, path: str) -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    t = [row.t for row in rows]
    ours = [np.nan if row.this_work is None else float(row.this_work) for row in rows]
    ax.plot(t, ours, "o-", label="catalog best")
    ax.plot(t, [float(row.r_over_r_plus_t) for row in rows], "s--", label="r/(r+t)")
    ax.plot(t, [float(row.power) for row in rows], "^:", label="(r/(r+1))^t")
    ax.set_xlabel("t")
    ax.set_ylabel("rate")
    ax.set_title(f"locality r = {r}")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_pattern(shape: Sequence[int], pattern: ErasurePattern, path: str,
                 trace: RecoveryTrace | None = None) -> None:
    """Two-dimensional grid: known cells dark, erased cells shaded by repair round."""
    if len(shape) != 2:
        raise ValueError("only two-dimensional patterns can be drawn")
    rows, cols = shape
    grid = np.full((rows, cols), np.nan)
    for i in pattern.erased:
        grid[np.unravel_index(i, (rows, cols))] = -1
    if trace is not None:
        for s in trace.steps:
            grid[np.unravel_index(s.coord, (rows, cols))] = s.round
    fig, ax = plt.subplots(figsize=(4, 4))
    known = np.zeros((rows, cols))
    for i in pattern.known:
        known[np.unravel_index(i, (rows, cols))] = 1
    ax.imshow(np.where(known == 1, 0.0, np.nan), cmap="gray", vmin=0, vmax=1)
    n_rounds = 1 + max((s.round for s in trace.steps), default=0) if trace else 1
    shown = np.ma.masked_invalid(np.where(grid >= 0, grid, np.nan))
    if np.any(~shown.mask):
        im = ax.imshow(shown, cmap="viridis", vmin=0, vmax=max(n_rounds - 1, 1))
        fig.colorbar(im, ax=ax, label="repair round", fraction=0.046)
    stuck = np.ma.masked_invalid(np.where(grid == -1, 1.0, np.nan))
    ax.imshow(stuck, cmap="Reds", vmin=0, vmax=1.5)
    ax.set_xticks(range(cols))
    ax.set_yticks(range(rows))
    ax.set_xlabel("column")
    ax.set_ylabel("row")
    ax.set_xticks(np.arange(-0.5, cols), minor=True)
    ax.set_yticks(np.arange(-0.5, rows), minor=True)
    ax.grid(which="minor", color="black", linewidth=0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
