"""Matplotlib figures for trees and corpus summaries, written straight to files."""
from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import sort_key  # noqa: E402
from .mcs import RootedTree  # noqa: E402

__all__ = ["plot_tree", "plot_corpus"]


def _layout(t: RootedTree) -> dict[str, tuple[float, float]]:
    # leaves get consecutive x slots, parents sit over the middle of their children
    pos: dict[str, tuple[float, float]] = {}
    slot = 0

    def place(u: str) -> float:
        nonlocal slot
        kids = t.children[u]
        if not kids:
            x = float(slot)
            slot += 1
        else:
            xs = [place(c) for c in kids]
            x = (xs[0] + xs[-1]) / 2
        pos[u] = (x, -float(t.depth[u]))
        return x

    place(t.root)
    return pos


def plot_tree(trees: Sequence[RootedTree], path: str | Path, title: str | None = None) -> Path:
    """Draw each component tree side by side, edges labeled with shared variables."""
    fig, axes = plt.subplots(1, len(trees), figsize=(max(4, 3 * len(trees)), 4), squeeze=False)
    for ax, t in zip(axes[0], trees):
        pos = _layout(t)
        for p, c in t.edges():
            (x0, y0), (x1, y1) = pos[p], pos[c]
            ax.plot([x0, x1], [y0, y1], color="0.5", lw=1, zorder=1)
            label = ",".join(sorted(t.label[c], key=sort_key))
            ax.annotate(label, ((x0 + x1) / 2, (y0 + y1) / 2), fontsize=7, color="0.3",
                        ha="center", va="center", backgroundcolor="white")
        for r, (x, y) in pos.items():
            ax.annotate(r, (x, y), ha="center", va="center", fontsize=9,
                        bbox={"boxstyle": "round", "fc": "#dde8f5", "ec": "0.4"}, zorder=2)
        xs = [x for x, _ in pos.values()]
        ys = [y for _, y in pos.values()]
        ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
        ax.set_ylim(min(ys) - 0.6, 0.6)
        ax.axis("off")
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_corpus(rows: Sequence[dict], path: str | Path) -> Path:
    """Grouped bars of the acyclicity counts per file set."""
    cols = ["queries", "alpha", "composite_key", "berge", "gamma"]
    names = [r["set"] for r in rows]
    fig, ax = plt.subplots(figsize=(max(5, 1.4 * len(rows) + 2), 3.5))
    width = 0.8 / len(cols)
    for k, col in enumerate(cols):
        xs = [i + (k - (len(cols) - 1) / 2) * width for i in range(len(rows))]
        ax.bar(xs, [r[col] for r in rows], width, label=col.replace("_", " "))
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(names, rotation=30, ha="right")
    ax.set_ylabel("files")
    ax.legend(frameon=False, fontsize=8, ncol=len(cols))
    ax.spines[["top", "right"]].set_visible(False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
