"""Figures for CLI reports, rendered off-screen to PNG files."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_STYLE = {
    "figure.figsize": (6.0, 3.6),
    "figure.dpi": 120,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def folner_ratio_figure(path, ns: Sequence[int], ratios: Sequence[float], title: str = "", limit=None) -> Path:
    """Log-x plot of boundary ratios against ``n``."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(ns, ratios, marker="o", ms=3, lw=1, label="ratio")
        if limit is not None:
            ax.axhline(float(limit), color="k", ls="--", lw=0.8, label=f"limit {float(limit):.4g}")
            ax.legend(frameon=False)
        if len(ns) > 1 and min(ns) > 0 and max(ns) / min(ns) >= 20:
            ax.set_xscale("log")
        ax.set_xlabel("n")
        ax.set_ylabel("m(boundary) / m(A_n)")
        ax.set_title(title)
        return _save(fig, path)


def density_figure(path, ts: Sequence[float], empirical: Sequence[float], lo: float, hi: float, title: str = "") -> Path:
    """Running density ``count/T`` with the target band."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(ts, empirical, lw=1, label="count / m(A)")
        ax.axhspan(lo, hi, color="tab:orange", alpha=0.3)
        ax.axhline((lo + hi) / 2, color="tab:orange", lw=0.8, label="m_H(W) / covolume")
        ax.set_xlabel("T")
        ax.set_ylabel("density")
        ax.set_title(title)
        ax.legend(frameon=False)
        return _save(fig, path)


def almost_periods_figure(path, points: Sequence[float], periods: Sequence[float], span, title: str = "") -> Path:
    """Model-set points and the almost periods as two rug rows."""
    lo, hi = span
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(7.0, 2.2))
        pts = [p for p in points if lo <= p < hi]
        per = [p for p in periods if lo <= p < hi]
        ax.vlines(pts, 0.55, 0.95, lw=0.6, color="tab:blue", label="points")
        ax.vlines(per, 0.05, 0.45, lw=0.9, color="tab:red", label="almost periods")
        ax.set_ylim(0, 1)
        ax.set_yticks([])
        ax.set_xlim(lo, hi)
        ax.set_title(title)
        ax.legend(frameon=False, loc="upper right", ncol=2)
        return _save(fig, path)
