"""Figure rendering for the report command.

All figures are rendered off-screen and written to files; nothing here
opens a window.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .pin import enumerate_group, lemma_a_check
from .scalars import binom2


def order_growth_figure(path: str | Path, ns: range = range(2, 7)) -> Path:
    """Enumerated group order against 2n! on a log scale."""
    path = Path(path)
    xs = list(ns)
    bfs = [len(enumerate_group(n)) for n in xs]
    formula = [2 * math.factorial(n) for n in xs]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogy(xs, formula, "o-", label="2 n!", color="#888888")
    ax.semilogy(xs, bfs, "x", label="enumerated", color="#c02020", markersize=9)
    ax.set_xlabel("n")
    ax.set_ylabel("group order")
    ax.set_xticks(xs)
    ax.set_title("order of the double cover")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def block_swap_sign_figure(path: str | Path, ks: range = range(2, 7)) -> Path:
    """The sign of hat_tau(k)^2 next to (-1)^binom2(k)."""
    path = Path(path)
    xs = list(ks)
    computed = [lemma_a_check(k)[1] for k in xs]
    predicted = [-1 if binom2(k) % 2 else 1 for k in xs]
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.step(xs, predicted, where="mid", label="(-1)^binom2(k)", color="#888888")
    ax.plot(xs, computed, "x", label="computed square", color="#c02020", markersize=9)
    ax.set_yticks([-1, 1])
    ax.set_ylim(-1.6, 1.6)
    ax.set_xticks(xs)
    ax.set_xlabel("k")
    ax.set_ylabel("sign")
    ax.set_title("square of the block swap")
    ax.legend(loc="center right")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def cayley_figure(path: str | Path, n: int = 3) -> Path:
    """Multiplication table of the double cover as a heatmap."""
    from .actions import sign_group_sym_track

    path = Path(path)
    table = sign_group_sym_track(n).gt.table
    fig, ax = plt.subplots(figsize=(4.5, 4.2))
    im = ax.imshow(table, cmap="viridis", interpolation="nearest")
    ax.set_title(f"multiplication table, n={n} (order {len(table)})")
    ax.set_xlabel("right factor")
    ax.set_ylabel("left factor")
    fig.colorbar(im, ax=ax, shrink=0.85, label="product index")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
