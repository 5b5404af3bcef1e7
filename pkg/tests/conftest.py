"""Shared fixtures and parameter generators for the test suite."""

import numpy as np
import pytest

from snod import ModelParams


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260826)


@pytest.fixture
def p_default() -> ModelParams:
    """Reference parameter set with a genuine spiking window (d=a=1, k=2.3, k_s=16, mu0=0.8, eps=0.1)."""
    return ModelParams()


def random_params(rng: np.random.Generator) -> ModelParams:
    """Log-uniform draw over the physically sensible parameter ranges."""
    def logu(lo, hi):
        return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))

    return ModelParams(
        d=logu(0.5, 2.0),
        a=logu(0.5, 2.0),
        k=logu(0.5, 5.0),
        k_s=logu(4.0, 40.0),
        mu0=logu(0.05, 1.2),
        b=float(rng.uniform(-0.3, 0.3)),
        eps=logu(0.02, 0.2),
    )
