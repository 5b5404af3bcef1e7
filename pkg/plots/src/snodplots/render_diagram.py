"""Bifurcation diagram: equilibrium branches styled by stability, cycle envelopes shaded.

Inputs (--in): the diagram CSV (sweep over b or mu0; detected from the header),
optionally followed by the thresholds CSV for Hopf markers. Stable branches are
drawn solid, unstable dashed, saddles dotted; cycle envelopes are shaded per
polarity; the pitchfork (PF) and saddle-node (SN) points are marked when the
sweep data exhibits them.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from .common import STABILITY_STYLE, run
from .schemas import SchemaError, load_diagram, load_thresholds

Z_ORIGIN_TOL = 1e-9


def _detect_param(path) -> str:
    try:
        first = Path(path).open().readline().split(",")[0].strip()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}")
    if first not in {"b", "mu0"}:
        raise SchemaError(f"{path}: expected a diagram CSV starting with 'b' or 'mu0', got {first!r}")
    return first


def _branch_key(z: float) -> int:
    if z > Z_ORIGIN_TOL:
        return 1
    if z < -Z_ORIGIN_TOL:
        return -1
    return 0


def _plot_branches(ax, rows) -> None:
    groups: dict[tuple[str, int], list[tuple[float, float]]] = {}
    for row in rows:
        if row["z_hat"] is None:
            continue
        key = (row["stability"], _branch_key(row["z_hat"]))
        groups.setdefault(key, []).append((row["param"], row["z_hat"]))
    seen_labels = set()
    for (stability, _), pts in sorted(groups.items(), key=lambda kv: kv[0]):
        pts.sort()
        style = dict(STABILITY_STYLE[stability])
        if style["label"] in seen_labels:
            style.pop("label")
        else:
            seen_labels.add(style["label"])
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker="" if len(xs) > 1 else ".", **style)


def _plot_envelopes(ax, rows) -> None:
    by_pol: dict[int, list[tuple[float, float, float]]] = {}
    for row in rows:
        if row["cycle_zmin"] is None:
            continue
        by_pol.setdefault(row["polarity"] or 0, []).append(
            (row["param"], row["cycle_zmin"], row["cycle_zmax"])
        )
    for pol, pts in sorted(by_pol.items()):
        pts.sort()
        xs, lo, hi = (np.array(v) for v in zip(*pts))
        ax.fill_between(xs, lo, hi, alpha=0.25,
                        color="tab:blue" if pol >= 0 else "tab:red",
                        label=f"cycle envelope (polarity {pol:+d})")


def _hopf_markers(ax, thresholds, x_lo: float, x_hi: float) -> None:
    for row in thresholds:
        if row["regime"] != "HopfWindow":
            continue
        for b_key, z_key in (("b_star", "z_star"), ("b_star2", "z_star2")):
            b, z = row[b_key], row[z_key]
            if b is not None and x_lo <= b <= x_hi:
                ax.plot([b], [z if z is not None else 0.0], marker="o", color="tab:green",
                        linestyle="", markersize=7, fillstyle="none")
                ax.annotate("H", (b, z if z is not None else 0.0),
                            textcoords="offset points", xytext=(4, 6))


def _structure_markers(ax, rows) -> None:
    """Data-driven pitchfork and saddle-node markers for the mu0 sweep."""
    origin = sorted(
        (r["param"], r["stability"]) for r in rows
        if r["z_hat"] is not None and _branch_key(r["z_hat"]) == 0
    )
    for (p1, s1), (p2, s2) in zip(origin, origin[1:]):
        if (s1 == "StableNode") != (s2 == "StableNode"):
            pf = 0.5 * (p1 + p2)
            ax.plot([pf], [0.0], marker="s", color="tab:purple", linestyle="", markersize=7)
            ax.annotate("PF", (pf, 0.0), textcoords="offset points", xytext=(4, -12))
            break
    saddles = [r for r in rows if r["stability"] == "Saddle" and r["z_hat"] is not None]
    if saddles:
        p_sn = min(r["param"] for r in saddles)
        for r in saddles:
            if r["param"] == p_sn:
                ax.plot([p_sn], [r["z_hat"]], marker="D", color="tab:orange",
                        linestyle="", markersize=6)
                ax.annotate("SN", (p_sn, r["z_hat"]), textcoords="offset points", xytext=(4, 4))


def render(inputs, fig):
    """Render a bifurcation diagram from the sweep CSV (plus optional thresholds CSV)."""
    param = _detect_param(inputs[0])
    rows = load_diagram(inputs[0], param)
    thresholds = load_thresholds(inputs[1]) if len(inputs) > 1 else []

    ax = fig.add_subplot(111)
    _plot_envelopes(ax, rows)
    _plot_branches(ax, rows)
    params = [r["param"] for r in rows]
    if params:
        if thresholds:
            _hopf_markers(ax, thresholds, min(params), max(params))
        if param == "mu0":
            _structure_markers(ax, rows)
    ax.set_xlabel(param)
    ax.set_ylabel("z")
    ax.legend(loc="best", fontsize=8)
    ax.set_title(f"Equilibria and cycle envelopes vs {param}")


def main(argv=None) -> int:
    return run(render, argv)


if __name__ == "__main__":
    sys.exit(main())
