"""Parameter sweeps: bifurcation diagrams, fI curves, frequency heatmap, CSV output.

Sweep cells are decoupled copies of the system, so they are integrated as one
vectorized batch (in fixed-size chunks to bound memory); results are assembled
in deterministic grid order. Limit cycles in scope are globally attracting,
so envelopes come from long simulations rather than collocation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bifurcation import ThresholdCurve, threshold_curve
from .equilibria import find_fixed_points
from .model import ModelParams
from .simulate import IntegratorConfig, _hysteresis_onsets, oscillation_metrics

CHUNK = 512
DEFAULT_IC_SET = ((0.0, 0.0), (0.5, 0.0), (-0.5, 0.0))  # z offsets scaled by 1/d at use


@dataclass(frozen=True)
class DiagramRow:
    param_value: float
    fixed_points: list  # of (z_hat, Stability)
    cycle_envelopes: list  # of (z_min, z_max, polarity)


@dataclass(frozen=True)
class HeatmapCell:
    mu0: float
    b: float
    frequency: float
    amplitude: float


@dataclass(frozen=True)
class HeatmapResult:
    cells: list  # of HeatmapCell, mu0-major order
    mu0_values: np.ndarray
    b_values: np.ndarray
    hopf_curve: ThresholdCurve


def _envelope_polarity(z_min: float, z_max: float) -> int:
    if z_min > 0.0:
        return 1
    if z_max < 0.0:
        return -1
    return 0


def _batch_oscillations(
    p_base: ModelParams,
    ics: np.ndarray,
    b: np.ndarray,
    mu0: np.ndarray,
    cfg: IntegratorConfig,
    t_end: float,
) -> list[tuple[float, float, float, float]]:
    """(frequency, amplitude, z_min, z_max) per cell, chunked batch integration."""
    from .simulate import integrate_batch

    transient = cfg.resolved_transient(p_base)
    out = []
    n = ics.shape[0]
    for start in range(0, n, CHUNK):
        stop = min(start + CHUNK, n)
        t, Z, _ = integrate_batch(
            p_base, ics[start:stop], t_end, cfg, b=b[start:stop], mu0=mu0[start:stop], sample_dt=0.05
        )
        sel = t >= transient
        tt = t[sel]
        for j in range(stop - start):
            out.append(oscillation_metrics(tt, Z[sel, j], p_base))
    return out


def diagram_in_b(
    p_base: ModelParams,
    b_grid: np.ndarray,
    ic_set=None,
    cfg: IntegratorConfig | None = None,
) -> list[DiagramRow]:
    """Fixed points and simulated cycle envelopes over an ascending input grid."""
    cfg = cfg or IntegratorConfig()
    b_grid = np.asarray(b_grid, dtype=float)
    if ic_set is None:
        ic_set = [(0.0, 0.0), (0.5 / p_base.d, 0.0), (-0.5 / p_base.d, 0.0)]

    n_ic = len(ic_set)
    bs = np.repeat(b_grid, n_ic)
    ics = np.tile(np.asarray(ic_set, dtype=float), (b_grid.size, 1))
    mus = np.full(bs.size, p_base.mu0)
    t_end = cfg.resolved_transient(p_base) + 40.0 / p_base.eps
    osc = _batch_oscillations(p_base, ics, bs, mus, cfg, t_end)

    rows = []
    for i, b in enumerate(b_grid):
        pb = p_base.replace(b=float(b))
        fps = [(eq.z_hat, eq.stability) for eq in find_fixed_points(pb)]
        envelopes = []
        seen = set()
        for j in range(n_ic):
            freq, _, z_min, z_max = osc[i * n_ic + j]
            if freq > 0.0:
                pol = _envelope_polarity(z_min, z_max)
                if pol not in seen:
                    seen.add(pol)
                    envelopes.append((z_min, z_max, pol))
        rows.append(DiagramRow(param_value=float(b), fixed_points=fps, cycle_envelopes=envelopes))
    return rows


def diagram_in_mu0(
    p_base: ModelParams,
    mu0_grid: np.ndarray,
    cfg: IntegratorConfig | None = None,
) -> list[DiagramRow]:
    """Zero-input diagram over basal sensitivity; twin cycles from ics z(0) = +/-0.1.

    The twin cycles have vanishing frequency towards the pitchfork, so this
    sweep uses a much longer horizon than the input diagram; envelopes are
    still dropped for basal sensitivities whose period exceeds the window.
    """
    cfg = cfg or IntegratorConfig()
    mu0_grid = np.asarray(mu0_grid, dtype=float)
    ic_set = [(0.1, 0.0), (-0.1, 0.0)]

    n_ic = len(ic_set)
    mus = np.repeat(mu0_grid, n_ic)
    ics = np.tile(np.asarray(ic_set, dtype=float), (mu0_grid.size, 1))
    bs = np.zeros(mus.size)
    t_end = cfg.resolved_transient(p_base) + 200.0 / p_base.eps
    osc = _batch_oscillations(p_base.replace(b=0.0), ics, bs, mus, cfg, t_end)

    rows = []
    for i, mu0 in enumerate(mu0_grid):
        pm = p_base.replace(mu0=float(mu0), b=0.0)
        fps = [(eq.z_hat, eq.stability) for eq in find_fixed_points(pm)]
        envelopes = []
        for j in range(n_ic):
            freq, _, z_min, z_max = osc[i * n_ic + j]
            if freq > 0.0:
                envelopes.append((z_min, z_max, _envelope_polarity(z_min, z_max)))
        rows.append(DiagramRow(param_value=float(mu0), fixed_points=fps, cycle_envelopes=envelopes))
    return rows


def fI_curve(
    p_base: ModelParams,
    b_grid: np.ndarray,
    cfg: IntegratorConfig | None = None,
) -> list[tuple[float, float]]:
    """Spiking frequency per input, hysteretic spike definition (theta_on = 0.5/d).

    The initial condition carries a small symmetry-breaking nudge so the
    supercritical-mu0 case (spiking at b = 0) selects the positive cycle.
    """
    from .simulate import integrate_batch

    cfg = cfg or IntegratorConfig()
    b_grid = np.asarray(b_grid, dtype=float)
    transient = cfg.resolved_transient(p_base)
    t_end = transient + 40.0 / p_base.eps
    theta_on = 0.5 / p_base.d
    theta_off = 0.15 / p_base.d

    ics = np.tile([0.01, 0.0], (b_grid.size, 1))
    result = []
    for start in range(0, b_grid.size, CHUNK):
        stop = min(start + CHUNK, b_grid.size)
        t, Z, _ = integrate_batch(
            p_base, ics[start:stop], t_end, cfg, b=b_grid[start:stop],
            mu0=np.full(stop - start, p_base.mu0), sample_dt=0.05,
        )
        sel = t >= transient
        tt = t[sel]
        for j in range(stop - start):
            onsets = _hysteresis_onsets(tt, np.abs(Z[sel, j]), theta_on, theta_off)
            freq = (onsets.size - 1) / (onsets[-1] - onsets[0]) if onsets.size >= 2 else 0.0
            result.append((float(b_grid[start + j]), float(freq)))
    return result


def frequency_heatmap(
    p_base: ModelParams,
    mu0_range: tuple[float, float],
    b_range: tuple[float, float],
    resolution: int | tuple[int, int] = 60,
    cfg: IntegratorConfig | None = None,
) -> HeatmapResult:
    """Oscillation frequency and amplitude over the (mu0, b) plane.

    Frequency uses the adaptive oscillation estimator, so the resting/spiking
    mask follows the sustained-envelope criterion and traces the Hopf
    boundary rather than the large-spike threshold.
    """
    cfg = cfg or IntegratorConfig()
    n_mu, n_b = (resolution, resolution) if isinstance(resolution, int) else resolution
    if n_mu < 2 or n_b < 2:
        raise ValueError("resolution must be at least 2 per axis")
    mu0_values = np.linspace(mu0_range[0], mu0_range[1], n_mu)
    b_values = np.linspace(b_range[0], b_range[1], n_b)

    mus = np.repeat(mu0_values, n_b)
    bs = np.tile(b_values, n_mu)
    ics = np.tile([0.01, 0.0], (mus.size, 1))
    t_end = cfg.resolved_transient(p_base) + 40.0 / p_base.eps
    osc = _batch_oscillations(p_base, ics, bs, mus, cfg, t_end)

    cells = [
        HeatmapCell(mu0=float(mus[i]), b=float(bs[i]), frequency=osc[i][0], amplitude=osc[i][1])
        for i in range(mus.size)
    ]
    curve = threshold_curve(p_base, mu0_values)
    return HeatmapResult(cells=cells, mu0_values=mu0_values, b_values=b_values, hopf_curve=curve)


# ---------------------------------------------------------------------------
# CSV serialization (17 significant digits; empty strings for absent fields)

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_diagram_csv(rows: list[DiagramRow], path, param_name: str) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"{param_name},z_hat,stability,cycle_zmin,cycle_zmax,polarity\n")
        for row in rows:
            n = max(len(row.fixed_points), len(row.cycle_envelopes), 1)
            for i in range(n):
                fp = row.fixed_points[i] if i < len(row.fixed_points) else None
                env = row.cycle_envelopes[i] if i < len(row.cycle_envelopes) else None
                z_hat = _fmt(fp[0]) if fp else ""
                stab = fp[1].value if fp else ""
                zmin = _fmt(env[0]) if env else ""
                zmax = _fmt(env[1]) if env else ""
                pol = str(env[2]) if env else ""
                fh.write(f"{_fmt(row.param_value)},{z_hat},{stab},{zmin},{zmax},{pol}\n")


def write_fi_csv(points: list[tuple[float, float]], path, mu0: float) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("mu0,b,frequency\n")
        for b, freq in points:
            fh.write(f"{_fmt(mu0)},{_fmt(b)},{_fmt(freq)}\n")


def write_heatmap_csv(result: HeatmapResult, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write("mu0,b,frequency,amplitude\n")
        for c in result.cells:
            fh.write(f"{_fmt(c.mu0)},{_fmt(c.b)},{_fmt(c.frequency)},{_fmt(c.amplitude)}\n")


def write_thresholds_csv(p_base: ModelParams, mu0_grid: np.ndarray, path) -> None:
    from .algebra import Regime, classify_regime
    from .bifurcation import input_thresholds

    with open(path, "w", newline="") as fh:
        fh.write("mu0,z_star,b_star,z_star2,b_star2,regime\n")
        for mu0 in np.asarray(mu0_grid, dtype=float):
            pm = p_base.replace(mu0=float(mu0))
            regime = classify_regime(pm)
            if regime is Regime.HOPF_WINDOW:
                rep = input_thresholds(pm)
                fh.write(
                    f"{_fmt(mu0)},{_fmt(rep.z_star)},{_fmt(rep.b_star)},"
                    f"{_fmt(rep.z_star2)},{_fmt(rep.b_star2)},{regime.value}\n"
                )
            else:
                fh.write(f"{_fmt(mu0)},,,,,{regime.value}\n")
