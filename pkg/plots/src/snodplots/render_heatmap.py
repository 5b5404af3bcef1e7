"""Frequency heatmap over the (mu0, b) plane with the analytic threshold overlay.

Inputs (--in): the heatmap CSV, optionally followed by the thresholds CSV;
rows where the threshold is defined are drawn as a curve on top of the map.
"""

from __future__ import annotations

import sys

import numpy as np

from .common import run
from .schemas import SchemaError, load_heatmap, load_thresholds


def _pivot(rows):
    mu0 = np.array(sorted({r["mu0"] for r in rows}))
    b = np.array(sorted({r["b"] for r in rows}))
    if mu0.size * b.size != len(rows):
        raise SchemaError(
            f"heatmap is not a full grid: {mu0.size} x {b.size} axes but {len(rows)} cells"
        )
    grid = np.full((mu0.size, b.size), np.nan)
    mu_index = {v: i for i, v in enumerate(mu0)}
    b_index = {v: j for j, v in enumerate(b)}
    for r in rows:
        grid[mu_index[r["mu0"]], b_index[r["b"]]] = r["frequency"]
    return mu0, b, grid


def render(inputs, fig):
    """Render the spiking-frequency heatmap (plus optional threshold-curve overlay)."""
    rows = load_heatmap(inputs[0])
    thresholds = load_thresholds(inputs[1]) if len(inputs) > 1 else []

    mu0, b, grid = _pivot(rows)
    ax = fig.add_subplot(111)
    mesh = ax.pcolormesh(mu0, b, grid.T, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label="frequency")

    curve = [(t["mu0"], t["b_star"]) for t in thresholds
             if t["b_star"] is not None and mu0[0] <= t["mu0"] <= mu0[-1]]
    if curve:
        xs, ys = zip(*sorted(curve))
        ys = np.clip(ys, b[0], b[-1])  # keep the overlay inside the plotted strip
        ax.plot(xs, ys, color="white", linewidth=2.0, label="onset threshold b*(mu0)")
        ax.legend(loc="upper right", fontsize=8)

    ax.set_xlabel("mu0")
    ax.set_ylabel("b")
    ax.set_title("Oscillation frequency over (mu0, b)")


def main(argv=None) -> int:
    return run(render, argv)


if __name__ == "__main__":
    sys.exit(main())
