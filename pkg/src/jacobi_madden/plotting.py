"""Figure for sieve runs (m, n) coloured by the stage that rejected t."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .sieve import STAGES, SieveReport

STAGE_COLOURS = {
    "conjecture": "#d9d9d9",
    "quadric": "#9ecae1",
    "conic": "#4292c6",
    "quartic": "#fdae6b",
}


def sieve_figure(reports: Sequence[SieveReport], path: str | Path, title: str | None = None) -> Path:
    """Write a scatter of the enumerated t = m/n to ``path``; the format follows the suffix."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6.4, 4.8), constrained_layout=True)
    for stage in STAGES:
        pts = [(r.t.m, r.t.n) for r in reports if r.failed_stage == stage]
        if pts:
            ms, ns = zip(*pts)
            ax.scatter(ms, ns, s=6, c=STAGE_COLOURS[stage], label=f"rejected: {stage}", linewidths=0)
    survivors = [r for r in reports if r.passed]
    if survivors:
        ax.scatter([r.t.m for r in survivors], [r.t.n for r in survivors], s=28, c="#d62728",
                   marker="*", label="survivor", zorder=3)
        # label the first dozen, skipping any that would sit on an earlier label
        span = max(r.t.m for r in reports) / 25
        placed: list[tuple[int, int]] = []
        for r in survivors:
            if len(placed) == 12:
                break
            if any(abs(r.t.m - m) < 2 * span and abs(r.t.n - n) < span / 2 for m, n in placed):
                continue
            placed.append((r.t.m, r.t.n))
            ax.annotate(str(r.t), (r.t.m, r.t.n), xytext=(3, 3), textcoords="offset points", fontsize=7)
    ax.set_xlabel("m")
    ax.set_ylabel("n")
    ax.set_title(title or f"sieve over t = m/n ({len(reports)} values, {len(survivors)} survivors)")
    ax.legend(fontsize=7, loc="upper left", frameon=False)
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
