"""Matplotlib figures written next to the delimited CLI output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .base5 import FlawReport  # noqa: E402
from .gaussian import BnSequence  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
}


def _save(fig, path: str) -> str:
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_flaw_frontier(rep: FlawReport, path: str) -> str:
    """Left: per-term excess ``(2n+1) - (d-k)`` coloured by shortcut validity.
    Right: flawed, exact and true base-5 digits of the imaginary part."""
    with plt.rc_context(STYLE):
        fig, (ax, bx) = plt.subplots(1, 2, figsize=(9, 3.4), gridspec_kw={"width_ratios": [3, 2]})
        for valid, colour, label in ((True, "tab:green", "shortcut exact"),
                                     (False, "tab:red", "shortcut wrong")):
            pts = [t for t in rep.term_forensics if t.eq3_valid == valid]
            ax.scatter([t.n for t in pts], [2 * t.n + 1 - (rep.d - t.k) for t in pts],
                       s=14, c=colour, label=label)
        units = [t for t in rep.term_forensics if t.m == 1]
        ax.scatter([t.n for t in units], [2 * t.n + 1 - (rep.d - t.k) for t in units],
                   s=60, facecolors="none", edgecolors="k", label="m = 1")
        ax.axhline(0, color="0.4", lw=0.8, ls="--")
        ax.set_xlabel("term index n")
        ax.set_ylabel("(2n+1) - (d-k)")
        ax.set_title(f"d = {rep.d}, r = {rep.r}", fontsize=10)
        ax.legend(frameon=False, loc="upper left")

        pos = [rep.d + 1 + i for i in range(rep.r)]
        for w, style, label in ((rep.oracle_im_window, "k-", "true"),
                                (rep.exact_im_window, "b--", "exact sum"),
                                (rep.im_window, "r:", "shortcut")):
            bx.step(pos, w.digits, style, where="mid", label=label)
        bx.set_ylim(-0.5, 4.5)
        bx.set_yticks(range(5))
        bx.set_xticks(pos if len(pos) <= 12 else pos[:: len(pos) // 10])
        bx.set_xlabel("position")
        bx.set_ylabel("base-5 digit of pi")
        bx.legend(frameon=False, fontsize=7)
        fig.tight_layout()
        return _save(fig, path)


def plot_bn_ratio(seq: BnSequence, path: str) -> str:
    ratios = [abs(b) / 5**n for n, b in enumerate(seq)]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 3))
        ax.plot(range(len(ratios)), ratios, ".", ms=2, color="tab:blue")
        ax.axhline(2, color="tab:red", lw=0.8, ls="--", label="bound 2")
        ax.set_xlabel("n")
        ax.set_ylabel("|b_n| / 5^n")
        ax.set_ylim(0, 2.2)
        ax.legend(frameon=False)
        fig.tight_layout()
        return _save(fig, path)
