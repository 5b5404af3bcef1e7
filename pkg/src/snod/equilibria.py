"""Fixed-point location, stability classification, and input-continuation.

All equilibria lie on the compact interval [-1/d, 1/d], so a dense sign-change
scan followed by bisection finds every root of the residual without the
miss-a-root risk of Newton iterations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .algebra import det_poly_at, trace_poly_at
from .errors import NotAFixedPoint
from .model import ModelParams, residual_h

DEFAULT_GRID = 4096
RESIDUAL_TOL = 1e-12
BRACKET_TOL = 1e-12
MERGE_TOL = 1e-9
CENTER_TOL = 1e-8


class Stability(Enum):
    STABLE_NODE = "StableNode"
    UNSTABLE_SOURCE = "UnstableSource"
    SADDLE = "Saddle"
    CENTER = "Center"


@dataclass(frozen=True)
class Equilibrium:
    z_hat: float
    s_hat: float
    trace: float
    det: float
    stability: Stability


@dataclass
class Branch:
    """Continuation of one fixed-point branch over an ascending input grid."""

    b_values: np.ndarray
    z_values: np.ndarray
    terminated: bool = False


def _residual_array(zs: np.ndarray, p: ModelParams) -> np.ndarray:
    arg = p.a * zs * (-p.k_s * zs**4 + p.k * zs**2 + p.mu0) + p.b
    return -p.d * zs + np.tanh(arg)


def _bisect(lo: float, hi: float, f_lo: float, p: ModelParams) -> float:
    # f_lo and f(hi) have opposite signs on entry
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = residual_h(mid, p)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= BRACKET_TOL and abs(f_mid) <= RESIDUAL_TOL:
            break
    return 0.5 * (lo + hi)


def classify(z: float, p: ModelParams, center_tol: float = CENTER_TOL) -> Equilibrium:
    """Build an Equilibrium from a root of the residual.

    Raises NotAFixedPoint when the candidate fails |h(z)| <= 1e-10.
    """
    res = residual_h(z, p)
    if abs(res) > 1e-10:
        raise NotAFixedPoint(f"residual {res:.3e} at z={z!r} exceeds 1e-10")
    tr = trace_poly_at(z, p)
    det = det_poly_at(z, p)
    if det < 0.0:
        stab = Stability.SADDLE
    elif abs(tr) <= center_tol:
        stab = Stability.CENTER
    elif tr < 0.0:
        stab = Stability.STABLE_NODE
    else:
        stab = Stability.UNSTABLE_SOURCE
    return Equilibrium(z_hat=z, s_hat=p.k_s * z**4, trace=tr, det=det, stability=stab)


def find_fixed_points(p: ModelParams, n_grid: int = DEFAULT_GRID) -> list[Equilibrium]:
    """All equilibria on [-1/d, 1/d], ascending in z.

    Sign-change scan on a uniform grid, bisection on each bracket, merge of
    duplicates closer than 1e-9.
    """
    lim = 1.0 / p.d
    zs = np.linspace(-lim, lim, n_grid + 1)
    hs = _residual_array(zs, p)

    roots: list[float] = []
    for i in range(n_grid):
        if hs[i] == 0.0:
            roots.append(float(zs[i]))
        elif (hs[i] > 0.0) != (hs[i + 1] > 0.0) and hs[i + 1] != 0.0:
            roots.append(_bisect(float(zs[i]), float(zs[i + 1]), float(hs[i]), p))
    if hs[-1] == 0.0:
        roots.append(float(zs[-1]))

    merged: list[float] = []
    for r in sorted(roots):
        if not merged or r - merged[-1] > MERGE_TOL:
            merged.append(r)
    return [classify(r, p) for r in merged]


def continue_branch(p: ModelParams, b_grid: np.ndarray) -> Branch:
    """Track the origin-connected fixed point along an ascending input grid.

    Each step warm-starts from the previous root with an expanding local
    bracket; loss of the bracket (saddle-node) sets the terminated flag and
    truncates the branch.
    """
    b_grid = np.asarray(b_grid, dtype=float)
    if b_grid.size == 0:
        return Branch(b_values=b_grid, z_values=np.empty(0), terminated=False)

    first = find_fixed_points(p.replace(b=float(b_grid[0])))
    z_prev = min((eq.z_hat for eq in first), key=abs)
    zs = [z_prev]
    lim = 1.0 / p.d
    terminated = False

    for b in b_grid[1:]:
        pb = p.replace(b=float(b))
        root = None
        w = max(1e-6, abs(b_grid[1] - b_grid[0]))
        while w <= 4.0 * lim:
            lo = max(z_prev - w, -lim)
            hi = min(z_prev + w, lim)
            f_lo = residual_h(lo, pb)
            f_hi = residual_h(hi, pb)
            if f_lo == 0.0:
                root = lo
                break
            if (f_lo > 0.0) != (f_hi > 0.0):
                root = _bisect(lo, hi, f_lo, pb)
                break
            w *= 4.0
        if root is None:
            terminated = True
            break
        z_prev = root
        zs.append(root)

    z_values = np.array(zs)
    return Branch(b_values=b_grid[: len(zs)], z_values=z_values, terminated=terminated)
