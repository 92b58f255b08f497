"""Figure rendering for the report path of the CLI.

Renders the per-strike hedge-ratio series (both strategies against time) and
the observed price path to PNG files next to the delimited output.  Uses the
Agg backend so it works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def render_hedge_figures(series: dict, out_dir) -> list[Path]:
    """One figure per strike from ``{strike: (times, xi, theta)}``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    for strike in sorted(series):
        t, xi, theta = series[strike]
        fig, ax = plt.subplots(figsize=(8.0, 4.5))
        ax.plot(t, xi, color="tab:blue", lw=1.2, label="locally risk minimizing")
        ax.plot(t, theta, color="tab:red", lw=1.2, label="mean-variance")
        ax.set_xlabel("t (years)")
        ax.set_ylabel("hedge ratio")
        ax.set_title(f"call strike {strike:g}")
        ax.grid(alpha=0.3)
        ax.legend()
        target = out_dir / f"hedge_strike_{strike:g}.png"
        fig.savefig(target, dpi=150, bbox_inches="tight")
        plt.close(fig)
        written.append(target)
    return written


def render_price_figure(times, prices, out_path) -> Path:
    """Price path against time, written to ``out_path``."""
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.plot(times, prices, color="tab:blue", lw=1.0)
    ax.set_xlabel("t (years)")
    ax.set_ylabel("price")
    ax.grid(alpha=0.3)
    fig.savefig(out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return out_path
