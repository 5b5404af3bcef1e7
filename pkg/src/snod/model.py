"""Core two-state model: parameters, vector field, Jacobian, fixed-point residual.

The system is

    dz/dt = -d*z + tanh((k*z^2 + mu0 - s) * a*z + b)
    ds/dt = eps * (-s + k_s * z^4)

with fast opinion z and slow recovery s. All functions here are pure and
operate on scalars; the batched (numpy) right-hand side used by sweeps lives
in :mod:`snod.simulate`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import NamedTuple


class State(NamedTuple):
    z: float
    s: float


class Derivative(NamedTuple):
    dz: float
    ds: float


@dataclass(frozen=True)
class ModelParams:
    """The seven scalar parameters of the model.

    Validation happens once at construction so the hot-path evaluations
    stay branch-free.
    """

    d: float = 1.0
    a: float = 1.0
    k: float = 2.3
    k_s: float = 16.0
    mu0: float = 0.8
    b: float = 0.0
    eps: float = 0.1

    def __post_init__(self):
        for name in ("d", "a", "k", "k_s"):
            v = getattr(self, name)
            if not (v > 0.0 and math.isfinite(v)):
                raise ValueError(f"{name} must be strictly positive, got {v!r}")
        if not (self.mu0 >= 0.0 and math.isfinite(self.mu0)):
            raise ValueError(f"mu0 must be nonnegative, got {self.mu0!r}")
        if not (0.0 < self.eps < 1.0):
            raise ValueError(f"eps must lie in (0, 1), got {self.eps!r}")
        if not math.isfinite(self.b):
            raise ValueError(f"b must be finite, got {self.b!r}")

    def replace(self, **changes) -> "ModelParams":
        return dataclasses.replace(self, **changes)


def phi(z: float, s: float, p: ModelParams) -> float:
    """Argument of tanh in the fast equation: a*z*(k*z^2 + mu0 - s) + b."""
    return p.a * z * (p.k * z * z + p.mu0 - s) + p.b


def psi(z: float, p: ModelParams) -> float:
    """phi restricted to the slow nullcline s = k_s*z^4."""
    return p.a * z * (-p.k_s * z**4 + p.k * z * z + p.mu0) + p.b


def residual_h(z: float, p: ModelParams) -> float:
    """Fixed-point residual -d*z + tanh(psi(z)).

    Its zeros are exactly the z-coordinates of equilibria; the matching
    s-coordinate is k_s*z^4.
    """
    return -p.d * z + math.tanh(psi(z, p))


def vector_field(state: State, p: ModelParams) -> Derivative:
    z, s = state
    dz = -p.d * z + math.tanh(phi(z, s, p))
    ds = p.eps * (-s + p.k_s * z**4)
    return Derivative(dz, ds)


def jacobian(state: State, p: ModelParams) -> tuple[tuple[float, float], tuple[float, float]]:
    """Jacobian of the vector field at an arbitrary state (not only equilibria).

    tanh' is computed as 1 - tanh^2 so it reuses the same tanh evaluation
    as the residual.
    """
    z, s = state
    th = math.tanh(phi(z, s, p))
    tp = 1.0 - th * th
    j11 = -p.d + tp * p.a * (3.0 * p.k * z * z + p.mu0 - s)
    j12 = tp * (-p.a * z)
    j21 = 4.0 * p.eps * p.k_s * z**3
    j22 = -p.eps
    return ((j11, j12), (j21, j22))
