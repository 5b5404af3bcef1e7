"""CSV contracts shared with the computation CLI, plus strict loaders.

Each loader validates the header byte-for-byte against the producer's schema
and parses values into floats (empty string -> None for the optional
columns). A mismatch raises SchemaError, which the render scripts turn into
a nonzero exit.
"""

from __future__ import annotations

import csv
from pathlib import Path

DIAGRAM_B_HEADER = ["b", "z_hat", "stability", "cycle_zmin", "cycle_zmax", "polarity"]
DIAGRAM_MU0_HEADER = ["mu0", "z_hat", "stability", "cycle_zmin", "cycle_zmax", "polarity"]
FI_HEADER = ["mu0", "b", "frequency"]
HEATMAP_HEADER = ["mu0", "b", "frequency", "amplitude"]
THRESHOLDS_HEADER = ["mu0", "z_star", "b_star", "z_star2", "b_star2", "regime"]
NULLCLINES_HEADER = ["b", "z", "s_znull", "s_snull"]

STABILITY_CLASSES = {"StableNode", "UnstableSource", "Saddle", "Center"}


class SchemaError(Exception):
    """Input file does not match the expected CSV contract."""


def _read_rows(path, header: list[str]) -> list[dict[str, str]]:
    path = Path(path)
    if not path.is_file():
        raise SchemaError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            got = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, expected header {','.join(header)}")
        if got != header:
            raise SchemaError(
                f"{path}: header mismatch, expected {','.join(header)!r}, got {','.join(got)!r}"
            )
        rows = []
        for i, cells in enumerate(reader, start=2):
            if len(cells) != len(header):
                raise SchemaError(f"{path}:{i}: expected {len(header)} columns, got {len(cells)}")
            rows.append(dict(zip(header, cells)))
    return rows


def _opt_float(value: str, where: str) -> float | None:
    if value == "":
        return None
    try:
        return float(value)
    except ValueError:
        raise SchemaError(f"{where}: not a number: {value!r}")


def _req_float(value: str, where: str) -> float:
    out = _opt_float(value, where)
    if out is None:
        raise SchemaError(f"{where}: required numeric field is empty")
    return out


def load_diagram(path, param_name: str) -> list[dict]:
    header = {"b": DIAGRAM_B_HEADER, "mu0": DIAGRAM_MU0_HEADER}[param_name]
    rows = []
    for raw in _read_rows(path, header):
        where = f"{path} ({param_name}={raw[param_name]})"
        stability = raw["stability"]
        if stability and stability not in STABILITY_CLASSES:
            raise SchemaError(f"{where}: unknown stability class {stability!r}")
        row = {
            "param": _req_float(raw[param_name], where),
            "z_hat": _opt_float(raw["z_hat"], where),
            "stability": stability or None,
            "cycle_zmin": _opt_float(raw["cycle_zmin"], where),
            "cycle_zmax": _opt_float(raw["cycle_zmax"], where),
            "polarity": None if raw["polarity"] == "" else int(raw["polarity"]),
        }
        if (row["cycle_zmin"] is None) != (row["cycle_zmax"] is None):
            raise SchemaError(f"{where}: cycle envelope must have both bounds or neither")
        rows.append(row)
    return rows


def load_fi(path) -> list[dict]:
    return [
        {key: _req_float(raw[key], f"{path} (b={raw['b']})") for key in FI_HEADER}
        for raw in _read_rows(path, FI_HEADER)
    ]


def load_heatmap(path) -> list[dict]:
    return [
        {key: _req_float(raw[key], f"{path} (mu0={raw['mu0']}, b={raw['b']})") for key in HEATMAP_HEADER}
        for raw in _read_rows(path, HEATMAP_HEADER)
    ]


def load_thresholds(path) -> list[dict]:
    rows = []
    for raw in _read_rows(path, THRESHOLDS_HEADER):
        where = f"{path} (mu0={raw['mu0']})"
        rows.append({
            "mu0": _req_float(raw["mu0"], where),
            "z_star": _opt_float(raw["z_star"], where),
            "b_star": _opt_float(raw["b_star"], where),
            "z_star2": _opt_float(raw["z_star2"], where),
            "b_star2": _opt_float(raw["b_star2"], where),
            "regime": raw["regime"],
        })
    return rows


def load_nullclines(path) -> list[dict]:
    return [
        {key: _req_float(raw[key], f"{path} (z={raw['z']})") for key in NULLCLINES_HEADER}
        for raw in _read_rows(path, NULLCLINES_HEADER)
    ]
