"""Phase-plane nullcline portrait with slow-drift level shading and fold markers.

Inputs (--in): the nullclines CSV. A fold sidecar JSON written next to it
(<name>.folds.json) is picked up automatically for fold markers and for the
slow timescale eps echoed in its config block (eps defaults to 0.1 without
the sidecar). Levels of the slow drift ds/dt are shaded at -0.3, -0.6, -0.9
and -1.2.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .common import run
from .schemas import SchemaError, load_nullclines

SDOT_LEVELS = (-0.3, -0.6, -0.9, -1.2)
DEFAULT_EPS = 0.1


def _load_sidecar(csv_path):
    sidecar = Path(csv_path).with_suffix(".folds.json")
    if not sidecar.is_file():
        return [], DEFAULT_EPS
    try:
        payload = json.loads(sidecar.read_text())
        folds = payload.get("folds", [])
        eps = float(payload.get("config", {}).get("eps", DEFAULT_EPS))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise SchemaError(f"{sidecar}: malformed fold sidecar: {exc}")
    return folds, eps


def _split_at_gaps(z: np.ndarray) -> list[np.ndarray]:
    """Index segments of a z grid, split where it skips over the origin."""
    if z.size < 2:
        return [np.arange(z.size)]
    steps = np.diff(z)
    cuts = np.flatnonzero(steps > 3.0 * np.median(steps)) + 1
    return np.split(np.arange(z.size), cuts)


def render(inputs, fig):
    """Render the nullcline portrait from the nullclines CSV (+ fold sidecar)."""
    rows = load_nullclines(inputs[0])
    folds, eps = _load_sidecar(inputs[0])

    ax = fig.add_subplot(111)
    z_all = np.array([r["z"] for r in rows])
    if z_all.size == 0:
        raise SchemaError(f"{inputs[0]}: no nullcline samples")

    # slow-drift level curves s = k_s z^4 - L/eps (L < 0 lies above the s-nullcline)
    order = np.argsort(z_all)
    z_grid = z_all[order]
    s_null = np.array([r["s_snull"] for r in rows])[order]
    for level in SDOT_LEVELS:
        shade = 0.85 + 0.1 * level  # deeper drift, darker line
        ax.plot(z_grid, s_null - level / eps, color=str(shade), linestyle="--", linewidth=1.0)
        ax.annotate(f"ds/dt = {level:g}", (z_grid[-1], s_null[-1] - level / eps),
                    fontsize=7, color="gray", ha="right")

    ax.plot(z_grid, s_null, color="tab:orange", linewidth=1.5, label="ds/dt = 0")

    by_b: dict[float, list[tuple[float, float]]] = {}
    for r in rows:
        by_b.setdefault(r["b"], []).append((r["z"], r["s_znull"]))
    for i, (b, pts) in enumerate(sorted(by_b.items())):
        pts.sort()
        z = np.array([p[0] for p in pts])
        s = np.array([p[1] for p in pts])
        color = f"C{i}"
        for k, seg in enumerate(_split_at_gaps(z)):
            ax.plot(z[seg], s[seg], color=color, linewidth=1.5,
                    label=f"dz/dt = 0, b = {b:g}" if k == 0 else None)

    for fold in folds:
        if fold.get("z_fold_lo") is None:
            continue
        ax.plot([fold["z_fold_lo"], fold["z_fold_hi"]],
                [fold["s_fold_lo"], fold["s_fold_hi"]],
                marker="v", linestyle="", color="black", markersize=6)

    # frame the portrait around the slow nullcline and drift levels; the fast
    # nullcline diverges near z = 0 and |z| = 1/d and is clipped by this view
    ax.set_xlabel("z")
    ax.set_ylabel("s")
    ax.set_ylim(-1.5, float(s_null.max()) + abs(min(SDOT_LEVELS)) / eps + 1.0)
    ax.set_title("Nullclines, folds, and slow-drift levels")
    ax.legend(loc="best", fontsize=8)


def main(argv=None) -> int:
    return run(render, argv)


if __name__ == "__main__":
    sys.exit(main())
