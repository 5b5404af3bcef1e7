"""Fixed-point location, stability classes, and input continuation."""

import numpy as np
import pytest

from snod import (
    ModelParams,
    NotAFixedPoint,
    Stability,
    classify,
    continue_branch,
    find_fixed_points,
    residual_h,
)
from tests.conftest import random_params


def dense_scan_roots(p, n=200001):
    """Brute-force oracle: sign changes of the residual on a fine grid, bisected."""
    z = np.linspace(-1.0 / p.d, 1.0 / p.d, n)
    h = np.array([residual_h(v, p) for v in z])
    roots = []
    for i in np.nonzero(np.sign(h[:-1]) * np.sign(h[1:]) < 0)[0]:
        lo, hi = z[i], z[i + 1]
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if residual_h(lo, p) * residual_h(mid, p) <= 0:
                hi = mid
            else:
                lo = mid
        roots.append(0.5 * (lo + hi))
    for i in np.nonzero(h == 0.0)[0]:
        roots.append(z[i])
    return sorted(roots)


class TestFindFixedPoints:
    def test_reference_resting_state(self, p_default):
        eqs = find_fixed_points(p_default)
        assert len(eqs) == 1
        eq = eqs[0]
        assert eq.z_hat == pytest.approx(0.0, abs=1e-12)
        assert eq.s_hat == pytest.approx(0.0, abs=1e-12)
        assert eq.trace == pytest.approx(-0.3, abs=1e-12)
        assert eq.det == pytest.approx(0.02, abs=1e-12)
        assert eq.stability is Stability.STABLE_NODE

    def test_three_fixed_points_past_pitchfork(self, p_default):
        eqs = find_fixed_points(p_default.replace(mu0=1.05))
        assert len(eqs) == 3
        zs = [eq.z_hat for eq in eqs]
        assert zs[0] == pytest.approx(-zs[2], abs=1e-10)
        assert zs[1] == pytest.approx(0.0, abs=1e-12)
        assert eqs[1].stability is Stability.SADDLE
        assert eqs[0].stability is Stability.UNSTABLE_SOURCE
        assert eqs[2].stability is Stability.UNSTABLE_SOURCE
        assert abs(zs[2]) == pytest.approx(0.37790069071297694, abs=1e-9)

    def test_large_input_saturates_opinion(self, p_default):
        # the equilibrium opinion approaches 1/d as the input grows
        z10 = find_fixed_points(p_default.replace(b=10.0))[-1].z_hat
        eqs = find_fixed_points(p_default.replace(b=30.0))
        assert len(eqs) == 1
        assert eqs[0].z_hat > z10
        assert eqs[0].z_hat == pytest.approx(1.0 / p_default.d, abs=1e-3)

    def test_matches_dense_scan_oracle(self):
        rng = np.random.default_rng(37)
        for _ in range(25):
            p = random_params(rng)
            got = [eq.z_hat for eq in find_fixed_points(p)]
            want = dense_scan_roots(p)
            assert len(got) == len(want), (p, got, want)
            assert got == pytest.approx(want, abs=1e-7)

    def test_invariants_on_random_parameters(self):
        rng = np.random.default_rng(41)
        for _ in range(60):
            p = random_params(rng)
            eqs = find_fixed_points(p)
            # generic draws can leave the paper regimes; the count stays small and odd
            assert len(eqs) in (1, 2, 3, 4, 5, 7)
            for eq in eqs:
                assert abs(residual_h(eq.z_hat, p)) <= 1e-10
                assert eq.s_hat == pytest.approx(p.k_s * eq.z_hat**4, abs=1e-12)
                assert abs(eq.z_hat) <= 1.0 / p.d + 1e-9
                if eq.det < 0:
                    assert eq.stability is Stability.SADDLE


class TestClassify:
    def test_rejects_non_fixed_point(self, p_default):
        with pytest.raises(NotAFixedPoint):
            classify(0.5, p_default)

    def test_sign_conventions(self, p_default):
        assert classify(0.0, p_default).stability is Stability.STABLE_NODE
        assert classify(0.0, p_default.replace(mu0=1.05)).stability is Stability.SADDLE


class TestContinueBranch:
    def test_branch_strictly_increasing(self, p_default):
        grid = np.arange(0.0, 0.5 + 1e-12, 1e-3)
        br = continue_branch(p_default, grid)
        assert not br.terminated
        assert br.z_values[0] == pytest.approx(0.0, abs=1e-10)
        assert np.all(np.diff(br.z_values) > 0)
        assert np.all(np.abs(br.z_values) <= 1.0 / p_default.d)

    def test_branch_consistent_with_fixed_points(self, p_default):
        grid = np.linspace(0.0, 0.2, 21)
        br = continue_branch(p_default, grid)
        for b, z in zip(grid, br.z_values):
            assert abs(residual_h(float(z), p_default.replace(b=float(b)))) <= 1e-9

    def test_negated_input_mirrors_equilibria(self, p_default):
        for b in (0.02, 0.1, 0.25):
            plus = [eq.z_hat for eq in find_fixed_points(p_default.replace(b=b))]
            minus = [eq.z_hat for eq in find_fixed_points(p_default.replace(b=-b))]
            assert sorted(-z for z in minus) == pytest.approx(plus, abs=1e-10)
