"""Phase-plane geometry: nullclines, fold points, singular-limit period.

The fast nullcline is a graph s(z) obtained by inverting the tanh in the
dz/dt = 0 equation; its folds (where ds/dz = 0) organize the relaxation
cycle. In the singular limit the fast jumps are instantaneous, so the period
is the traversal time of the two slow branches between the jump landing
points and the folds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoFold, QuadratureDivergence
from .model import ModelParams

FOLD_SCAN_POINTS = 4096
FOLD_EDGE_INSET = 1e-6
QUAD_TOL = 1e-8


@dataclass(frozen=True)
class FoldPoints:
    z_fold_lo: float
    z_fold_hi: float
    s_fold_lo: float
    s_fold_hi: float


def z_nullcline(z: float, p: ModelParams) -> float:
    """Ordinate s(z) of the fast nullcline: k z^2 + mu0 + (b - artanh(d z)) / (a z)."""
    if z == 0.0 or abs(z) >= 1.0 / p.d:
        raise DomainError(f"z must satisfy 0 < |z| < 1/d, got {z!r}")
    return p.k * z * z + p.mu0 + (p.b - math.atanh(p.d * z)) / (p.a * z)


def z_nullcline_slope(z: float, p: ModelParams) -> float:
    """Analytic ds/dz of the fast nullcline."""
    if z == 0.0 or abs(z) >= 1.0 / p.d:
        raise DomainError(f"z must satisfy 0 < |z| < 1/d, got {z!r}")
    return (
        2.0 * p.k * z
        - p.d / (p.a * z * (1.0 - p.d * p.d * z * z))
        - (p.b - math.atanh(p.d * z)) / (p.a * z * z)
    )


def s_dot_level(z: float, s: float, p: ModelParams) -> float:
    """Slow-field value eps * (k_s z^4 - s); zero on the slow nullcline."""
    return p.eps * (-s + p.k_s * z**4)


def _bisect(f, lo: float, hi: float, f_lo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, fm
        else:
            hi = mid
        if hi - lo <= 1e-14 * max(1.0, abs(lo)):
            break
    return 0.5 * (lo + hi)


def fold_points(p: ModelParams) -> FoldPoints:
    """The two folds of the nullcline on (0, 1/d), located by slope sign changes.

    The slope diverges to -inf at both ends of the interval, so a folded
    nullcline shows a -,+,- sign pattern; a monotone (saturated) nullcline
    shows none and raises NoFold.
    """
    lim = 1.0 / p.d
    zs = np.linspace(FOLD_EDGE_INSET * lim, (1.0 - FOLD_EDGE_INSET) * lim, FOLD_SCAN_POINTS)
    slopes = np.array([z_nullcline_slope(float(z), p) for z in zs])
    signs = slopes > 0.0
    flips = np.flatnonzero(signs[1:] != signs[:-1])
    if flips.size < 2:
        raise NoFold(f"nullcline slope has {flips.size} sign changes on (0, 1/d)")
    f = lambda z: z_nullcline_slope(z, p)
    i, j = flips[0], flips[-1]
    z_lo = _bisect(f, float(zs[i]), float(zs[i + 1]), float(slopes[i]))
    z_hi = _bisect(f, float(zs[j]), float(zs[j + 1]), float(slopes[j]))
    return FoldPoints(
        z_fold_lo=z_lo,
        z_fold_hi=z_hi,
        s_fold_lo=z_nullcline(z_lo, p),
        s_fold_hi=z_nullcline(z_hi, p),
    )


def _adaptive_simpson(f, a: float, b: float, tol: float = QUAD_TOL, depth: int = 40) -> float:
    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2.0, depth - 1
        )

    return recurse(a, b, fa, fm, fb, whole, tol, depth)


def _landing_point(p: ModelParams, s_target: float, lo: float, hi: float) -> float:
    """Solve z_nullcline(z) = s_target on (lo, hi) by bisection."""
    g = lambda z: z_nullcline(z, p) - s_target
    g_lo, g_hi = g(lo), g(hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0.0) == (g_hi > 0.0):
        raise QuadratureDivergence(
            f"no jump landing point with ordinate {s_target} on ({lo}, {hi})"
        )
    return _bisect(g, lo, hi, g_lo)


def _branch_time(p: ModelParams, z_a: float, z_b: float) -> float:
    """Traversal time of a slow branch between abscissas z_a < z_b.

    dt = |s'(z)| dz / |ds/dt| with ds/dt evaluated on the nullcline. A sign
    change of ds/dt inside the branch means the branch touches the slow
    nullcline and the integral diverges.
    """
    probes = np.linspace(z_a, z_b, 257)
    vals = np.array([p.k_s * z**4 - z_nullcline(float(z), p) for z in probes])
    if np.any(vals == 0.0) or (vals.max() > 0.0 and vals.min() < 0.0):
        raise QuadratureDivergence("slow branch touches the recovery nullcline")

    def integrand(z):
        return abs(z_nullcline_slope(z, p)) / (p.eps * abs(p.k_s * z**4 - z_nullcline(z, p)))

    return _adaptive_simpson(integrand, z_a, z_b)


def singular_period(p: ModelParams) -> float:
    """Relaxation-cycle period in the instantaneous-jump limit.

    Jump landing points are found by matching each fold ordinate on the
    opposite stable branch; fold-adjacent endpoints are inset by 1e-6 to
    keep the quadrature away from branch tangency.
    """
    folds = fold_points(p)
    lim = 1.0 / p.d
    inset = FOLD_EDGE_INSET
    # jump off the high fold lands on the left branch, off the low fold on the right
    z_land_left = _landing_point(p, folds.s_fold_hi, inset * lim, folds.z_fold_lo - inset)
    z_land_right = _landing_point(p, folds.s_fold_lo, folds.z_fold_hi + inset, (1.0 - inset) * lim)
    t_left = _branch_time(p, z_land_left, folds.z_fold_lo - inset)
    t_right = _branch_time(p, folds.z_fold_hi + inset, z_land_right)
    return t_left + t_right
