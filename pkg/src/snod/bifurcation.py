"""Spiking onset thresholds: Hopf inputs b*, b**, pitchfork location, threshold curve.

The two roots z*, z** of the trace cubic in (0, 1/d) mark where the unique
equilibrium loses/regains stability as the input grows. Because the residual
is invertible in b at fixed z, the matching input thresholds come out in
closed form:

    b*(z) = artanh(d z) - a z (k z^2 + mu0 - k_s z^4)
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Regime, TraceCoeffs, classify_regime, cubic_real_roots
from .errors import RegimeMismatch
from .model import ModelParams


@dataclass(frozen=True)
class ThresholdReport:
    z_star: float
    z_star2: float
    b_star: float
    b_star2: float
    regime: Regime


@dataclass(frozen=True)
class ThresholdCurve:
    mu0_values: np.ndarray
    b_star_values: np.ndarray  # nan where undefined
    defined_mask: np.ndarray


def trace_roots_z(p: ModelParams) -> tuple[float, float]:
    """The two zeros of the trace polynomial in (0, 1/d), ascending.

    Defined whenever the trace cubic has two sign changes on (0, 1/d^2);
    this covers the Hopf window and also the near-pitchfork band where the
    determinant witness fails but the loss of stability (and hence the
    spiking thresholds) still occurs. RegimeMismatch is raised only when
    the roots do not exist (e.g. the always-stable case).
    """
    regime = classify_regime(p)
    tc = TraceCoeffs.from_params(p)
    xs = cubic_real_roots(tc.c3, -tc.c2, tc.c1, tc.c0 - p.eps)
    lim = 1.0 / (p.d * p.d)
    inside = sorted(x for x in xs if 0.0 < x < lim)
    if len(inside) < 2:
        raise RegimeMismatch(regime, f"expected two trace roots in (0, {lim}), found {inside}")
    return math.sqrt(inside[0]), math.sqrt(inside[1])


def threshold_input_at(z: float, p: ModelParams) -> float:
    """Input solving the fixed-point equation for a prescribed equilibrium z."""
    return math.atanh(p.d * z) - p.a * z * (p.k * z * z + p.mu0 - p.k_s * z**4)


def input_thresholds(p: ModelParams) -> ThresholdReport:
    """Hopf thresholds: the inputs at which the equilibrium sits at z*, z**."""
    z1, z2 = trace_roots_z(p)
    return ThresholdReport(
        z_star=z1,
        z_star2=z2,
        b_star=threshold_input_at(z1, p),
        b_star2=threshold_input_at(z2, p),
        regime=classify_regime(p),
    )


def pitchfork_mu0(p: ModelParams) -> float:
    """Basal sensitivity at which the origin's stability flips (b = 0)."""
    return p.d / p.a


def threshold_curve(p_base: ModelParams, mu0_grid: np.ndarray) -> ThresholdCurve:
    """Lower threshold b* over a mu0 grid.

    b_star_values holds the closed-form threshold wherever the trace roots
    exist (nan otherwise); defined_mask is tighter and marks only the Hopf
    window, where the trace-root crossing is a certified stability change
    and the curve is guaranteed strictly decreasing.
    """
    mu0_grid = np.asarray(mu0_grid, dtype=float)
    b_stars = np.full(mu0_grid.shape, np.nan)
    mask = np.zeros(mu0_grid.shape, dtype=bool)
    for i, mu0 in enumerate(mu0_grid):
        pm = p_base.replace(mu0=float(mu0))
        try:
            report = input_thresholds(pm)
        except RegimeMismatch:
            continue
        b_stars[i] = report.b_star
        mask[i] = report.regime is Regime.HOPF_WINDOW
    return ThresholdCurve(mu0_values=mu0_grid, b_star_values=b_stars, defined_mask=mask)
