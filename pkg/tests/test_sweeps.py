"""Parameter sweeps and their CSV serializations."""

import numpy as np
import pytest

from snod import (
    Stability,
    diagram_in_b,
    diagram_in_mu0,
    fI_curve,
    frequency_heatmap,
    input_thresholds,
    write_diagram_csv,
    write_fi_csv,
    write_heatmap_csv,
    write_thresholds_csv,
)


@pytest.fixture(scope="module")
def diagram_b_rows():
    from snod import ModelParams
    return input_thresholds(ModelParams()), diagram_in_b(
        ModelParams(), np.array([0.0, 0.02, 0.1, 0.2, 0.5])
    )


@pytest.fixture(scope="module")
def diagram_mu0_rows():
    from snod import ModelParams
    return diagram_in_mu0(ModelParams(), np.array([0.8, 1.05]))


@pytest.fixture(scope="module")
def heatmap_result():
    from snod import ModelParams
    return frequency_heatmap(ModelParams(), (0.7, 0.9), (0.0, 0.2), resolution=(6, 8))


class TestDiagramInB:
    @pytest.fixture
    def rows(self, diagram_b_rows):
        return diagram_b_rows

    def test_envelopes_only_inside_spiking_window(self, rows):
        rep, rows = rows
        for row in rows:
            inside = rep.b_star < row.param_value < rep.b_star2
            assert bool(row.cycle_envelopes) == inside, row.param_value

    def test_cycle_polarity_follows_input_sign(self, rows):
        _, rows = rows
        for row in rows:
            for z_min, z_max, pol in row.cycle_envelopes:
                assert z_min < z_max
                assert pol == 1  # positive input grid here

    def test_fixed_point_stability_flips_inside_window(self, rows):
        rep, rows = rows
        for row in rows:
            stabs = {s for _, s in row.fixed_points}
            if rep.b_star < row.param_value < rep.b_star2:
                assert Stability.UNSTABLE_SOURCE in stabs
            else:
                assert Stability.STABLE_NODE in stabs

    def test_negative_input_gives_negative_polarity(self, p_default):
        row = diagram_in_b(p_default, np.array([-0.1]))[0]
        assert row.cycle_envelopes and row.cycle_envelopes[0][2] == -1


class TestDiagramInMu0:
    @pytest.fixture
    def rows(self, diagram_mu0_rows):
        return diagram_mu0_rows

    def test_fixed_point_count_across_pitchfork(self, rows):
        assert len(rows[0].fixed_points) == 1
        assert len(rows[1].fixed_points) == 3

    def test_twin_mirrored_envelopes_above_pitchfork(self, rows):
        envs = sorted(rows[1].cycle_envelopes, key=lambda e: e[2])
        assert [e[2] for e in envs] == [-1, 1]
        neg, pos = envs
        assert neg[0] == pytest.approx(-pos[1], abs=1e-6)
        assert neg[1] == pytest.approx(-pos[0], abs=1e-6)
        assert pos[0] >= 0.0  # cycle does not encircle the origin

    def test_no_zero_input_cycle_below_pitchfork(self, rows):
        assert rows[0].cycle_envelopes == []


class TestFICurve:
    def test_frequency_zero_below_threshold_then_increasing(self, p_default):
        rep = input_thresholds(p_default)
        # stop at 0.12: deeper in the window the cycle floor rises above the
        # hysteretic re-arm threshold and the spike count reads zero
        grid = np.array([0.01, 0.05, 0.08, 0.12])
        pts = fI_curve(p_default, grid)
        assert [b for b, _ in pts] == list(grid)
        freqs = dict(pts)
        assert freqs[0.01] == 0.0
        active = [f for b, f in pts if b > rep.b_star]
        assert all(f > 0 for f in active)
        assert all(f2 > f1 for f1, f2 in zip(active, active[1:]))  # increasing in b


class TestFrequencyHeatmap:
    @pytest.fixture
    def result(self, heatmap_result):
        return heatmap_result

    def test_grid_layout_is_mu0_major(self, result):
        assert len(result.cells) == 48
        assert result.mu0_values.size == 6 and result.b_values.size == 8
        got_mu = [c.mu0 for c in result.cells]
        got_b = [c.b for c in result.cells]
        assert got_mu == list(np.repeat(result.mu0_values, 8))
        assert got_b == list(np.tile(result.b_values, 6))

    def test_resting_spiking_split_brackets_threshold(self, result):
        for i, mu0 in enumerate(result.mu0_values):
            if not result.hopf_curve.defined_mask[i]:
                continue
            b_star = result.hopf_curve.b_star_values[i]
            row = result.cells[i * 8:(i + 1) * 8]
            for c in row:
                if c.b < b_star - 0.05:
                    assert c.frequency == 0.0, (mu0, c.b)
                elif b_star + 0.05 < c.b < 0.19:
                    assert c.frequency > 0.0, (mu0, c.b)

    def test_rejects_degenerate_resolution(self, p_default):
        with pytest.raises(ValueError):
            frequency_heatmap(p_default, (0.7, 0.9), (0.0, 0.2), resolution=1)


class TestCsvWriters:
    def test_diagram_schema_and_determinism(self, p_default, tmp_path):
        grid = np.array([0.0, 0.1])
        paths = []
        for name in ("a.csv", "b.csv"):
            rows = diagram_in_b(p_default, grid)
            path = tmp_path / name
            write_diagram_csv(rows, path, "b")
            paths.append(path)
        text = paths[0].read_text()
        assert text.splitlines()[0] == "b,z_hat,stability,cycle_zmin,cycle_zmax,polarity"
        assert text == paths[1].read_text()  # byte-identical rerun
        # spiking row carries both a fixed point and an envelope
        spiking = [l for l in text.splitlines()[1:] if l.startswith("0.1")]
        assert any(l.count(",") == 5 and l.split(",")[5] in {"1", "-1"} for l in spiking)

    def test_fi_schema(self, p_default, tmp_path):
        pts = fI_curve(p_default, np.array([0.0, 0.1]))
        path = tmp_path / "fi.csv"
        write_fi_csv(pts, path, p_default.mu0)
        lines = path.read_text().splitlines()
        assert lines[0] == "mu0,b,frequency"
        assert len(lines) == 3
        assert all(len(l.split(",")) == 3 for l in lines[1:])
        assert float(lines[1].split(",")[0]) == p_default.mu0

    def test_heatmap_schema(self, p_default, tmp_path):
        res = frequency_heatmap(p_default, (0.75, 0.85), (0.0, 0.1), resolution=(2, 3))
        path = tmp_path / "hm.csv"
        write_heatmap_csv(res, path)
        lines = path.read_text().splitlines()
        assert lines[0] == "mu0,b,frequency,amplitude"
        assert len(lines) == 7

    def test_thresholds_schema_and_regime_column(self, p_default, tmp_path):
        path = tmp_path / "thr.csv"
        write_thresholds_csv(p_default, np.array([0.1, 0.8]), path)
        lines = path.read_text().splitlines()
        assert lines[0] == "mu0,z_star,b_star,z_star2,b_star2,regime"
        low, high = lines[1].split(","), lines[2].split(",")
        assert low[1] == low[2] == "" and low[5] == "AlwaysStable"
        assert high[5] == "HopfWindow"
        rep = input_thresholds(p_default)
        assert float(high[2]) == rep.b_star and float(high[4]) == rep.b_star2
