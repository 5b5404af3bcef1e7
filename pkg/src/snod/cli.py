"""Command-line front end: every analysis as a subcommand, JSON config in, CSV/JSON out.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 regime mismatch. All outputs are deterministic for a fixed config.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .bifurcation import input_thresholds
from .errors import RegimeMismatch, SnodError
from .geometry import NoFold, fold_points, z_nullcline
from .model import ModelParams
from .simulate import IntegratorConfig, detect_spikes, integrate
from .sweeps import (
    diagram_in_b,
    diagram_in_mu0,
    fI_curve,
    frequency_heatmap,
    write_diagram_csv,
    write_fi_csv,
    write_heatmap_csv,
    write_thresholds_csv,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_REGIME = 4

PARAM_KEYS = ("d", "a", "k", "k_s", "mu0", "b", "eps")
INTEGRATOR_KEYS = ("rel_tol", "abs_tol", "max_step", "t_transient")
RANGE_KEYS = ("mu0_min", "mu0_max", "mu0_steps", "b_min", "b_max", "b_steps")
OTHER_KEYS = ("t_end", "seed", "out")
ALLOWED_KEYS = set(PARAM_KEYS) | set(INTEGRATOR_KEYS) | set(RANGE_KEYS) | set(OTHER_KEYS)

DEFAULTS = {
    "d": 1.0, "a": 1.0, "k": 2.3, "k_s": 16.0, "mu0": 0.8, "b": 0.0, "eps": 0.1,
    "rel_tol": 1e-8, "abs_tol": 1e-8, "max_step": None, "t_transient": None,
    "t_end": 200.0, "seed": 0, "out": None,
    "mu0_min": None, "mu0_max": None, "mu0_steps": None,
    "b_min": None, "b_max": None, "b_steps": None,
}


class ConfigError(Exception):
    pass


def load_config(path: str | None) -> dict:
    cfg = dict(DEFAULTS)
    if path is not None:
        try:
            raw = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(raw) - ALLOWED_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(raw)
    return cfg


def build_params(cfg: dict) -> ModelParams:
    try:
        return ModelParams(**{k: float(cfg[k]) for k in PARAM_KEYS})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid model parameters: {exc}") from exc


def build_integrator(cfg: dict) -> IntegratorConfig:
    try:
        return IntegratorConfig(
            rel_tol=float(cfg["rel_tol"]),
            abs_tol=float(cfg["abs_tol"]),
            max_step=None if cfg["max_step"] is None else float(cfg["max_step"]),
            t_transient=None if cfg["t_transient"] is None else float(cfg["t_transient"]),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid integrator settings: {exc}") from exc


def _grid(cfg: dict, prefix: str, lo: float, hi: float, steps: int) -> np.ndarray:
    lo = float(cfg[f"{prefix}_min"]) if cfg[f"{prefix}_min"] is not None else lo
    hi = float(cfg[f"{prefix}_max"]) if cfg[f"{prefix}_max"] is not None else hi
    steps = int(cfg[f"{prefix}_steps"]) if cfg[f"{prefix}_steps"] is not None else steps
    if steps < 1 or not hi >= lo:
        raise ConfigError(f"bad {prefix} range [{lo}, {hi}] with {steps} steps")
    return np.linspace(lo, hi, steps)


def _effective(cfg: dict) -> dict:
    return {k: cfg[k] for k in sorted(cfg)}


def _emit_json(obj: dict, quiet: bool) -> None:
    if not quiet:
        json.dump(obj, sys.stdout, sort_keys=True)
        sys.stdout.write("\n")


def _round6(x: float) -> float:
    return float(f"{x:.6g}") if math.isfinite(x) else x


def cmd_simulate(args, cfg: dict) -> int:
    p = build_params(cfg)
    icfg = build_integrator(cfg)
    try:
        z0, s0 = (float(v) for v in args.ic.split(","))
    except ValueError:
        raise ConfigError(f"--ic must be 'z,s', got {args.ic!r}")
    t_end = float(cfg["t_end"])
    traj = integrate(p, (z0, s0), t_end, icfg)
    out = Path(args.out or cfg["out"] or "trajectory.csv")
    traj.to_csv(out)
    metrics = detect_spikes(traj, t_transient=min(icfg.resolved_transient(p), 0.5 * t_end))
    payload = {
        "spike_times": [float(t) for t in metrics.spike_times],
        "period": metrics.period,
        "frequency": metrics.frequency,
        "z_min": metrics.z_min,
        "z_max": metrics.z_max,
        "periodic": metrics.periodic_flag,
        "polarity": metrics.polarity,
        "config": _effective(cfg),
    }
    out.with_suffix(".metrics.json").write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    _emit_json({"out": str(out), "frequency": _round6(metrics.frequency),
                "spikes": len(metrics.spike_times)}, args.quiet)
    return EXIT_OK


def cmd_fixed_points(args, cfg: dict) -> int:
    from .equilibria import find_fixed_points

    p = build_params(cfg)
    eqs = find_fixed_points(p)
    out = Path(args.out or cfg["out"] or "fixed_points.csv")
    with open(out, "w", newline="") as fh:
        fh.write("z_hat,s_hat,trace,det,stability\n")
        for eq in eqs:
            fh.write(f"{eq.z_hat:.17g},{eq.s_hat:.17g},{eq.trace:.17g},{eq.det:.17g},{eq.stability.value}\n")
    _emit_json({"out": str(out), "count": len(eqs)}, args.quiet)
    return EXIT_OK


def cmd_threshold(args, cfg: dict) -> int:
    p = build_params(cfg)
    rep = input_thresholds(p)  # raises RegimeMismatch outside the Hopf window
    payload = {
        "z_star": rep.z_star, "z_star2": rep.z_star2,
        "b_star": rep.b_star, "b_star2": rep.b_star2,
        "regime": rep.regime.value,
        "config": _effective(cfg),
    }
    out = args.out or cfg["out"]
    if out:
        Path(out).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    _emit_json({"b_star": _round6(rep.b_star), "b_star2": _round6(rep.b_star2),
                "regime": rep.regime.value}, args.quiet)
    return EXIT_OK


def cmd_threshold_curve(args, cfg: dict) -> int:
    p = build_params(cfg)
    grid = _grid(cfg, "mu0", 0.7, 0.99, 30)
    out = Path(args.out or cfg["out"] or "thresholds.csv")
    write_thresholds_csv(p, grid, out)
    _emit_json({"out": str(out), "points": int(grid.size)}, args.quiet)
    return EXIT_OK


def cmd_sweep(args, cfg: dict) -> int:
    p = build_params(cfg)
    icfg = build_integrator(cfg)
    kind = args.kind
    if kind == "diagram-b":
        grid = _grid(cfg, "b", -0.3, 0.3, 121)
        rows = diagram_in_b(p, grid, cfg=icfg)
        out = Path(args.out or cfg["out"] or "diagram_b.csv")
        write_diagram_csv(rows, out, "b")
        spiking = sum(1 for r in rows if r.cycle_envelopes)
        summary = {"out": str(out), "cells": len(rows), "spiking_fraction": _round6(spiking / len(rows))}
    elif kind == "diagram-mu0":
        grid = _grid(cfg, "mu0", 0.7, 1.2, 101)
        rows = diagram_in_mu0(p, grid, cfg=icfg)
        out = Path(args.out or cfg["out"] or "diagram_mu0.csv")
        write_diagram_csv(rows, out, "mu0")
        spiking = sum(1 for r in rows if r.cycle_envelopes)
        summary = {"out": str(out), "cells": len(rows), "spiking_fraction": _round6(spiking / len(rows))}
    elif kind == "fi":
        grid = _grid(cfg, "b", 0.0, 0.1, 51)
        points = fI_curve(p, grid, cfg=icfg)
        out = Path(args.out or cfg["out"] or "fi_curve.csv")
        write_fi_csv(points, out, p.mu0)
        spiking = sum(1 for _, f in points if f > 0)
        summary = {"out": str(out), "cells": len(points), "spiking_fraction": _round6(spiking / len(points))}
    elif kind == "heatmap":
        mu_grid = _grid(cfg, "mu0", 0.75, 1.1, 60)
        b_grid = _grid(cfg, "b", 0.0, 0.1, 60)
        result = frequency_heatmap(
            p, (mu_grid[0], mu_grid[-1]), (b_grid[0], b_grid[-1]),
            resolution=(mu_grid.size, b_grid.size), cfg=icfg,
        )
        out = Path(args.out or cfg["out"] or "heatmap.csv")
        write_heatmap_csv(result, out)
        spiking = sum(1 for c in result.cells if c.frequency > 0)
        summary = {"out": str(out), "cells": len(result.cells),
                   "spiking_fraction": _round6(spiking / len(result.cells))}
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown sweep kind {kind!r}")
    _emit_json(summary, args.quiet)
    return EXIT_OK


def cmd_nullclines(args, cfg: dict) -> int:
    p = build_params(cfg)
    try:
        b_list = [float(v) for v in args.b_list.split(",") if v.strip() != ""]
    except ValueError:
        raise ConfigError(f"--b-list must be comma-separated floats, got {args.b_list!r}")
    if not b_list:
        raise ConfigError("--b-list is empty")
    out = Path(args.out or cfg["out"] or "nullclines.csv")
    lim = 1.0 / p.d
    zs = np.concatenate([
        np.linspace(-0.999 * lim, -1e-3 * lim, 400),
        np.linspace(1e-3 * lim, 0.999 * lim, 400),
    ])
    with open(out, "w", newline="") as fh:
        fh.write("b,z,s_znull,s_snull\n")
        for b in b_list:
            pb = p.replace(b=b)
            for z in zs:
                fh.write(f"{b:.17g},{z:.17g},{z_nullcline(float(z), pb):.17g},{p.k_s * z**4:.17g}\n")
    folds = []
    for b in b_list:
        pb = p.replace(b=b)
        try:
            fp = fold_points(pb)
            folds.append({"b": b, "z_fold_lo": fp.z_fold_lo, "z_fold_hi": fp.z_fold_hi,
                          "s_fold_lo": fp.s_fold_lo, "s_fold_hi": fp.s_fold_hi})
        except NoFold:
            folds.append({"b": b, "z_fold_lo": None, "z_fold_hi": None,
                          "s_fold_lo": None, "s_fold_hi": None})
    out.with_suffix(".folds.json").write_text(
        json.dumps({"folds": folds, "config": _effective(cfg)}, sort_keys=True, indent=2) + "\n"
    )
    _emit_json({"out": str(out), "curves": len(b_list)}, args.quiet)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="snod", description=__doc__)
    parser.add_argument("--config", default=None, help="JSON configuration file")
    parser.add_argument("--out", default=None, help="output path (overrides config)")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallelism hint; sweeps are evaluated as vectorized batches")
    parser.add_argument("--quiet", action="store_true", help="suppress summary JSON on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("simulate", help="integrate one trajectory, write CSV + spike metrics")
    sp.add_argument("--ic", default="0,0", help="initial condition 'z,s'")

    sub.add_parser("fixed-points", help="locate and classify all equilibria")
    sub.add_parser("threshold", help="Hopf input thresholds b*, b**")
    sub.add_parser("threshold-curve", help="b*(mu0) over a basal-sensitivity grid")

    sp = sub.add_parser("sweep", help="bifurcation diagrams, fI curve, frequency heatmap")
    sp.add_argument("--kind", required=True, choices=["diagram-b", "diagram-mu0", "fi", "heatmap"])

    sp = sub.add_parser("nullclines", help="sample both nullclines, fold points as JSON sidecar")
    sp.add_argument("--b-list", default="0,0.05,0.1", help="comma-separated input values")

    return parser


COMMANDS = {
    "simulate": cmd_simulate,
    "fixed-points": cmd_fixed_points,
    "threshold": cmd_threshold,
    "threshold-curve": cmd_threshold_curve,
    "sweep": cmd_sweep,
    "nullclines": cmd_nullclines,
}


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RegimeMismatch as exc:
        print(f"error: regime mismatch: {exc.regime.value}", file=sys.stderr)
        return EXIT_REGIME
    except SnodError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
