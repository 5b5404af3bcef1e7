"""Command-line interface: exit codes, output files, and determinism."""

import json
import subprocess
import sys

import pytest

from snod.cli import main


def run(tmp_path, *argv, config=None):
    args = []
    if config is not None:
        cfg_path = tmp_path / "config.json"
        cfg_path.write_text(json.dumps(config))
        args += ["--config", str(cfg_path)]
    return main(args + ["--quiet"] + list(argv))


class TestSimulate:
    def test_writes_csv_and_metrics_sidecar(self, tmp_path):
        out = tmp_path / "traj.csv"
        code = run(tmp_path, "--out", str(out), "simulate", "--ic", "0,0",
                   config={"b": 0.1, "t_end": 300.0})
        assert code == 0
        assert out.read_text().splitlines()[0] == "t,z,s"
        meta = json.loads(out.with_suffix(".metrics.json").read_text())
        assert meta["frequency"] > 0 and meta["polarity"] == 1
        assert meta["config"]["b"] == 0.1  # effective config is echoed back

    def test_bad_ic_is_config_error(self, tmp_path):
        assert run(tmp_path, "simulate", "--ic", "oops") == 2

    def test_rerun_is_byte_identical(self, tmp_path):
        texts = []
        for name in ("one.csv", "two.csv"):
            out = tmp_path / name
            assert run(tmp_path, "--out", str(out), "simulate",
                       config={"b": 0.1, "t_end": 250.0}) == 0
            texts.append(out.read_text())
        assert texts[0] == texts[1]


class TestFixedPoints:
    def test_counts_and_schema(self, tmp_path):
        out = tmp_path / "fp.csv"
        assert run(tmp_path, "--out", str(out), "fixed-points", config={"mu0": 1.05}) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "z_hat,s_hat,trace,det,stability"
        assert len(lines) == 4  # three equilibria above the pitchfork


class TestThreshold:
    def test_json_payload(self, tmp_path):
        out = tmp_path / "thr.json"
        assert run(tmp_path, "--out", str(out), "threshold") == 0
        payload = json.loads(out.read_text())
        assert payload["regime"] == "HopfWindow"
        assert 0 < payload["b_star"] < payload["b_star2"]

    def test_regime_mismatch_exit_code(self, tmp_path):
        assert run(tmp_path, "threshold", config={"mu0": 0.1}) == 4

    def test_invalid_parameter_exit_code(self, tmp_path):
        assert run(tmp_path, "threshold", config={"d": -1.0}) == 2


class TestThresholdCurve:
    def test_csv_written_for_custom_grid(self, tmp_path):
        out = tmp_path / "curve.csv"
        cfg = {"mu0_min": 0.75, "mu0_max": 0.85, "mu0_steps": 3}
        assert run(tmp_path, "--out", str(out), "threshold-curve", config=cfg) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "mu0,z_star,b_star,z_star2,b_star2,regime"
        assert len(lines) == 4

    def test_bad_range_is_config_error(self, tmp_path):
        cfg = {"mu0_min": 0.9, "mu0_max": 0.8}
        assert run(tmp_path, "threshold-curve", config=cfg) == 2


class TestSweep:
    def test_diagram_b(self, tmp_path):
        out = tmp_path / "diag.csv"
        cfg = {"b_min": 0.0, "b_max": 0.1, "b_steps": 3}
        assert run(tmp_path, "--out", str(out), "sweep", "--kind", "diagram-b", config=cfg) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "b,z_hat,stability,cycle_zmin,cycle_zmax,polarity"
        assert len(lines) >= 4

    def test_fi(self, tmp_path):
        out = tmp_path / "fi.csv"
        cfg = {"b_min": 0.0, "b_max": 0.1, "b_steps": 3}
        assert run(tmp_path, "--out", str(out), "sweep", "--kind", "fi", config=cfg) == 0
        assert out.read_text().splitlines()[0] == "mu0,b,frequency"

    def test_heatmap(self, tmp_path):
        out = tmp_path / "hm.csv"
        cfg = {"mu0_min": 0.75, "mu0_max": 0.85, "mu0_steps": 2,
               "b_min": 0.0, "b_max": 0.1, "b_steps": 3}
        assert run(tmp_path, "--out", str(out), "sweep", "--kind", "heatmap", config=cfg) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "mu0,b,frequency,amplitude"
        assert len(lines) == 7

    def test_unknown_kind_rejected_by_argparse(self, tmp_path):
        with pytest.raises(SystemExit):
            run(tmp_path, "sweep", "--kind", "nonsense")


class TestNullclines:
    def test_csv_and_folds_sidecar(self, tmp_path):
        out = tmp_path / "null.csv"
        assert run(tmp_path, "--out", str(out), "nullclines", "--b-list", "0.05,5") == 0
        assert out.read_text().splitlines()[0] == "b,z,s_znull,s_snull"
        folds = json.loads(out.with_suffix(".folds.json").read_text())["folds"]
        assert folds[0]["b"] == 0.05 and folds[0]["z_fold_lo"] is not None
        assert folds[1]["b"] == 5.0 and folds[1]["z_fold_lo"] is None  # saturated: no folds

    def test_empty_b_list_is_config_error(self, tmp_path):
        assert run(tmp_path, "nullclines", "--b-list", "") == 2


class TestConfigHandling:
    def test_unknown_key_rejected(self, tmp_path):
        assert run(tmp_path, "threshold", config={"bogus": 1}) == 2

    def test_missing_config_file(self, tmp_path):
        assert main(["--config", str(tmp_path / "absent.json"), "--quiet", "threshold"]) == 2

    def test_bad_jobs(self, tmp_path):
        assert main(["--jobs", "0", "--quiet", "threshold"]) == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "snod.cli", "--quiet", "--out", str(tmp_path / "thr.json"), "threshold"],
        capture_output=True, text=True, cwd=tmp_path,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads((tmp_path / "thr.json").read_text())["regime"] == "HopfWindow"
