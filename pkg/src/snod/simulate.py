"""Time integration, spike detection, limit-cycle envelopes, bounding box.

Integration uses an adaptive embedded Runge-Kutta 4(5) pair with dense output
(scipy's RK45). Spike detection is hysteretic: a spike onset is an upward
crossing of |z| through theta_on = 0.5/d, re-armed only after |z| falls below
theta_off = 0.15/d, which rejects subthreshold wiggles. (The re-arm level sits
above the floor of the large relaxation cycles, whose minimum |z| stays near
0.12/d at strong input and never revisits zero.) A second, adaptive
estimator classifies *any* sustained oscillation (including small cycles born
at the Hopf points whose amplitude never reaches theta_on); parameter sweeps
use it to trace the resting/spiking boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import solve_ivp

from .errors import StepSizeUnderflow, TooShort
from .model import ModelParams, State

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class IntegratorConfig:
    """Local error tolerances, step cap, and transient-discard horizon.

    max_step and t_transient default to min(0.1, 0.1/eps) and 10/eps
    respectively when left as None; they are resolved against the model
    parameters at integration time.
    """

    rel_tol: float = DEFAULT_TOL
    abs_tol: float = DEFAULT_TOL
    max_step: float | None = None
    t_transient: float | None = None

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol"):
            v = getattr(self, name)
            if not (0.0 < v <= 1e-2):
                raise ValueError(f"{name} must lie in (0, 1e-2], got {v!r}")
        if self.max_step is not None and not self.max_step > 0.0:
            raise ValueError(f"max_step must be positive, got {self.max_step!r}")
        if self.t_transient is not None and self.t_transient < 0.0:
            raise ValueError(f"t_transient must be nonnegative, got {self.t_transient!r}")

    def resolved_max_step(self, p: ModelParams) -> float:
        return self.max_step if self.max_step is not None else min(0.1, 0.1 / p.eps)

    def resolved_transient(self, p: ModelParams) -> float:
        return self.t_transient if self.t_transient is not None else 10.0 / p.eps


@dataclass
class Trajectory:
    """Sampled solution curve. Immutable by convention after construction."""

    times: np.ndarray
    states: np.ndarray  # shape (n, 2), columns z and s
    params: ModelParams
    dense: object | None = None  # interpolant from the integrator, if kept

    @property
    def z(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def s(self) -> np.ndarray:
        return self.states[:, 1]

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("t,z,s\n")
            for t, (z, s) in zip(self.times, self.states):
                fh.write(f"{t:.17g},{z:.17g},{s:.17g}\n")


@dataclass(frozen=True)
class SpikeMetrics:
    spike_times: np.ndarray
    period: float
    frequency: float
    z_min: float
    z_max: float
    periodic_flag: bool
    polarity: int  # +1, -1, or 0 when resting / mixed


@dataclass(frozen=True)
class BoundingBox:
    """Forward-invariant rectangle [-1/d, 1/d] x [-1, k_s/d^4]."""

    z_lo: float
    z_hi: float
    s_lo: float
    s_hi: float

    def contains(self, z: float, s: float, tol: float = 0.0) -> bool:
        return (self.z_lo - tol <= z <= self.z_hi + tol) and (self.s_lo - tol <= s <= self.s_hi + tol)


def bounding_box(p: ModelParams) -> BoundingBox:
    return BoundingBox(z_lo=-1.0 / p.d, z_hi=1.0 / p.d, s_lo=-1.0, s_hi=p.k_s / p.d**4)


def _rhs(p: ModelParams):
    d, a, k, ks, mu0, b, eps = p.d, p.a, p.k, p.k_s, p.mu0, p.b, p.eps

    def f(t, y):
        z, s = y
        return (-d * z + math.tanh((k * z * z + mu0 - s) * a * z + b), eps * (-s + ks * z**4))

    return f


def integrate(
    p: ModelParams,
    ic: State | Sequence[float],
    t_end: float,
    cfg: IntegratorConfig | None = None,
    sample_dt: float | None = None,
) -> Trajectory:
    """Integrate from ic over [0, t_end], sampled uniformly via dense output."""
    if not t_end > 0.0:
        raise ValueError(f"t_end must be positive, got {t_end!r}")
    cfg = cfg or IntegratorConfig()
    max_step = cfg.resolved_max_step(p)
    if sample_dt is None:
        sample_dt = min(0.05, max_step)
    t_eval = np.arange(0.0, t_end + 0.5 * sample_dt, sample_dt)
    t_eval[-1] = min(t_eval[-1], t_end)
    sol = solve_ivp(
        _rhs(p),
        (0.0, t_end),
        [float(ic[0]), float(ic[1])],
        method="RK45",
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=max_step,
        t_eval=t_eval,
        dense_output=True,
    )
    if sol.status != 0:
        raise StepSizeUnderflow(f"integration failed: {sol.message}")
    return Trajectory(times=sol.t, states=sol.y.T.copy(), params=p, dense=sol.sol)


def integrate_batch(
    p_base: ModelParams,
    ics: np.ndarray,
    t_end: float,
    cfg: IntegratorConfig | None = None,
    b: np.ndarray | float | None = None,
    mu0: np.ndarray | float | None = None,
    sample_dt: float = 0.1,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate many decoupled copies of the system in one vectorized solve.

    ics has shape (n, 2); b and mu0 may vary per copy (arrays of length n).
    Returns (times, Z, S) with Z, S of shape (n_times, n). Step-size control
    is shared across the batch, so the local error bound applies to the
    batch-wide norm.
    """
    cfg = cfg or IntegratorConfig()
    ics = np.asarray(ics, dtype=float)
    n = ics.shape[0]
    b_arr = np.full(n, p_base.b) if b is None else np.broadcast_to(np.asarray(b, dtype=float), (n,))
    mu_arr = np.full(n, p_base.mu0) if mu0 is None else np.broadcast_to(np.asarray(mu0, dtype=float), (n,))
    d, a, k, ks, eps = p_base.d, p_base.a, p_base.k, p_base.k_s, p_base.eps

    def f(t, y):
        z = y[:n]
        s = y[n:]
        dz = -d * z + np.tanh((k * z * z + mu_arr - s) * (a * z) + b_arr)
        ds = eps * (-s + ks * z**4)
        return np.concatenate((dz, ds))

    y0 = np.concatenate((ics[:, 0], ics[:, 1]))
    t_eval = np.arange(0.0, t_end + 0.5 * sample_dt, sample_dt)
    sol = solve_ivp(
        f,
        (0.0, t_end),
        y0,
        method="RK45",
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        max_step=cfg.resolved_max_step(p_base),
        t_eval=t_eval,
    )
    if sol.status != 0:
        raise StepSizeUnderflow(f"batch integration failed: {sol.message}")
    return sol.t, sol.y[:n].T, sol.y[n:].T


def _hysteresis_onsets(times: np.ndarray, x: np.ndarray, on: float, off: float) -> np.ndarray:
    """Times of upward crossings of x through `on`, re-armed below `off`.

    Crossing instants are linearly interpolated between samples. The detector
    starts disarmed unless the first sample is already below `off`.
    """
    e = np.zeros(x.size, dtype=np.int8)
    e[x >= on] = 1
    e[x <= off] = -1
    nz = np.flatnonzero(e)
    if nz.size == 0:
        return np.empty(0)
    filled = e[nz]
    # onset = transition -1 -> 1 in the sparse event sequence
    trans = np.flatnonzero((filled[1:] == 1) & (filled[:-1] == -1)) + 1
    idx = nz[trans]
    if idx.size == 0:
        return np.empty(0)
    i0 = idx - 1
    x0, x1 = x[i0], x[idx]
    frac = np.where(x1 > x0, (on - x0) / np.where(x1 > x0, x1 - x0, 1.0), 0.0)
    return times[i0] + frac * (times[idx] - times[i0])


def detect_spikes(
    traj: Trajectory,
    t_transient: float | None = None,
    theta_on: float | None = None,
    theta_off: float | None = None,
    cv_tol: float = 0.02,
) -> SpikeMetrics:
    """Hysteretic spike metrics on the post-transient part of a trajectory."""
    p = traj.params
    if t_transient is None:
        t_transient = 10.0 / p.eps
    if traj.times[-1] < t_transient:
        raise TooShort(f"trajectory ends at {traj.times[-1]}, transient is {t_transient}")
    theta_on = 0.5 / p.d if theta_on is None else theta_on
    theta_off = 0.15 / p.d if theta_off is None else theta_off

    sel = traj.times >= t_transient
    t = traj.times[sel]
    z = traj.z[sel]
    zabs = np.abs(z)
    spike_times = _hysteresis_onsets(t, zabs, theta_on, theta_off)

    z_min = float(z.min())
    z_max = float(z.max())

    if spike_times.size == 0:
        return SpikeMetrics(spike_times, period=0.0, frequency=0.0, z_min=z_min, z_max=z_max,
                            periodic_flag=False, polarity=0)

    # polarity: sign of z at the extreme following each onset
    dt = float(t[1] - t[0]) if t.size > 1 else 1.0
    ahead = max(1, int(10.0 / (p.d * dt)))  # spike peak sits within a few fast time units
    signs = []
    for st in spike_times:
        i = np.searchsorted(t, st)
        j = min(i + int(np.argmax(zabs[i:i + ahead])), zabs.size - 1)
        signs.append(math.copysign(1.0, z[j]))
    polarity = int(signs[0]) if all(s == signs[0] for s in signs) else 0

    if spike_times.size < 2:
        return SpikeMetrics(spike_times, period=0.0, frequency=0.0, z_min=z_min, z_max=z_max,
                            periodic_flag=False, polarity=polarity)

    isi = np.diff(spike_times)
    period = float(isi.mean())
    cv = float(isi.std() / period) if period > 0 else math.inf
    return SpikeMetrics(
        spike_times=spike_times,
        period=period,
        frequency=1.0 / period,
        z_min=z_min,
        z_max=z_max,
        periodic_flag=isi.size >= 2 and cv < cv_tol,
        polarity=polarity,
    )


def oscillation_metrics(
    times: np.ndarray,
    z: np.ndarray,
    p: ModelParams,
    settle_fraction: float = 0.4,
) -> tuple[float, float, float, float]:
    """(frequency, amplitude, z_min, z_max) of sustained oscillation, if any.

    Unlike the fixed-threshold spike detector this adapts its crossing band
    to the observed envelope, so it also registers the small cycles near the
    Hopf points. The envelope is measured on the final part of the window
    (after `settle_fraction`). A cell counts as resting (frequency 0, by
    convention) unless the late envelope is either wide (> 0.1/d) or still
    growing (late width at least 1.3x the early width); a decaying transient
    shows a shrinking envelope and reads as resting under both tests.
    """
    i0 = int(settle_fraction * times.size)
    t = times[i0:]
    zz = z[i0:]
    z_min = float(zz.min())
    z_max = float(zz.max())
    width = z_max - z_min
    half = zz.size // 2
    w_early = float(zz[:half].max() - zz[:half].min()) if half > 1 else 0.0
    w_late = float(zz[half:].max() - zz[half:].min()) if half > 1 else width
    floor = 1e-4 / p.d
    sustained = w_late > 0.1 / p.d or (w_late > floor and w_late >= 1.3 * w_early)
    if not sustained:
        return 0.0, width, z_min, z_max
    mid = 0.5 * (z_min + z_max)
    onsets = _hysteresis_onsets(t, zz, mid + 0.25 * width, mid - 0.25 * width)
    if onsets.size < 2:
        return 0.0, width, z_min, z_max
    freq = (onsets.size - 1) / (onsets[-1] - onsets[0])
    return float(freq), width, z_min, z_max


def limit_cycle_envelope(
    p: ModelParams,
    ic: State | Sequence[float],
    cfg: IntegratorConfig | None = None,
    t_end: float | None = None,
) -> tuple[float, float, bool]:
    """Post-transient (z_min, z_max, encircles_origin) from a long simulation."""
    cfg = cfg or IntegratorConfig()
    transient = cfg.resolved_transient(p)
    if t_end is None:
        t_end = transient + 40.0 / p.eps
    traj = integrate(p, ic, t_end, cfg)
    sel = traj.times >= transient
    z = traj.z[sel]
    z_min = float(z.min())
    z_max = float(z.max())
    return z_min, z_max, bool(z_min < 0.0 < z_max)
