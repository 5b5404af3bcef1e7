"""Frequency-vs-input (fI) slices, one grayscale curve per basal sensitivity.

Inputs (--in): one or more fI CSVs; each file may itself hold several mu0
slices. Curves are drawn in order of increasing mu0 with decreasing shade of
gray (lowest mu0 darkest).
"""

from __future__ import annotations

import sys

from .common import run
from .schemas import load_fi


def render(inputs, fig):
    """Render fI slices from one or more fI-curve CSVs."""
    by_mu0: dict[float, list[tuple[float, float]]] = {}
    for path in inputs:
        for row in load_fi(path):
            by_mu0.setdefault(row["mu0"], []).append((row["b"], row["frequency"]))

    ax = fig.add_subplot(111)
    slices = sorted(by_mu0.items())
    n = len(slices)
    for i, (mu0, pts) in enumerate(slices):
        pts.sort()
        xs, ys = zip(*pts)
        shade = 0.75 * i / max(1, n - 1)  # darkest first, lightening with mu0
        ax.plot(xs, ys, color=(shade, shade, shade), label=f"mu0 = {mu0:g}")
    ax.set_xlabel("b")
    ax.set_ylabel("frequency")
    ax.set_title("Spiking frequency vs input")
    ax.legend(loc="best", fontsize=8)


def main(argv=None) -> int:
    return run(render, argv)


if __name__ == "__main__":
    sys.exit(main())
