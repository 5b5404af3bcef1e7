"""Closed-form trace/determinant polynomials, cubic root solver, regime classifier.

At an equilibrium (z, k_s*z^4) the trace and determinant of the Jacobian are
cubic polynomials in z^2 whose coefficients follow directly from the model
parameters. Everything downstream (thresholds, stability, counting) reduces
to real roots of these cubics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import AllCoefficientsZero
from .model import ModelParams


class Regime(Enum):
    ALWAYS_STABLE = "AlwaysStable"
    HOPF_WINDOW = "HopfWindow"
    SADDLE_ORIGIN = "SaddleOrigin"
    MIXED_CASE = "MixedCase"


@dataclass(frozen=True)
class TraceCoeffs:
    """Coefficients of tr J as a cubic in x = z^2: c3*x^3 - c2*x^2 + c1*x + c0 - eps."""

    c3: float
    c2: float
    c1: float
    c0: float

    @classmethod
    def from_params(cls, p: ModelParams) -> "TraceCoeffs":
        return cls(
            c3=p.a * p.d * p.d * p.k_s,
            c2=3.0 * p.a * p.d * p.d * p.k + p.a * p.k_s,
            c1=3.0 * p.a * p.k - p.a * p.d * p.d * p.mu0,
            c0=p.a * p.mu0 - p.d,
        )

    def _cubic(self) -> tuple[float, float, float]:
        return self.c3, self.c2, self.c1


@dataclass(frozen=True)
class DetCoeffs:
    """Coefficients of det J / eps = -(chat3*x^3 - chat2*x^2 + chat1*x + chat0), x = z^2."""

    chat3: float
    chat2: float
    chat1: float
    chat0: float

    @classmethod
    def from_params(cls, p: ModelParams) -> "DetCoeffs":
        tc = TraceCoeffs.from_params(p)
        return cls(
            chat3=5.0 * tc.c3,
            chat2=tc.c2 + 4.0 * p.a * p.k_s,
            chat1=tc.c1,
            chat0=tc.c0,
        )

    def _cubic(self) -> tuple[float, float, float]:
        return self.chat3, self.chat2, self.chat1


@dataclass(frozen=True)
class CubicStationaryPoints:
    """Roots of the derivative of a cubic c3*x^3 - c2*x^2 + c1*x + const."""

    lower: float
    upper: float
    real_flag: bool


def trace_poly_at(z: float, p: ModelParams) -> float:
    """Trace of the Jacobian at the lifted point (z, k_s*z^4), valid at fixed points."""
    c = TraceCoeffs.from_params(p)
    x = z * z
    return ((c.c3 * x - c.c2) * x + c.c1) * x + c.c0 - p.eps


def det_poly_at(z: float, p: ModelParams) -> float:
    """Determinant of the Jacobian at the lifted point, valid at fixed points."""
    c = DetCoeffs.from_params(p)
    x = z * z
    return p.eps * -(((c.chat3 * x - c.chat2) * x + c.chat1) * x + c.chat0)


def _polish(root: float, a3: float, a2: float, a1: float, a0: float) -> float:
    # one Newton step; improves Cardano/trig output near multiple roots
    for _ in range(2):
        f = ((a3 * root + a2) * root + a1) * root + a0
        fp = (3.0 * a3 * root + 2.0 * a2) * root + a1
        if fp == 0.0:
            break
        step = f / fp
        if not math.isfinite(step):
            break
        root -= step
    return root


def cubic_real_roots(a3: float, a2: float, a1: float, a0: float) -> list[float]:
    """All real roots of a3*x^3 + a2*x^2 + a1*x + a0, ascending.

    Degenerate leading coefficients fall back to the quadratic/linear case.
    Multiple roots are merged, so the result holds distinct values only.
    """
    scale = max(abs(a3), abs(a2), abs(a1), abs(a0))
    if scale == 0.0:
        raise AllCoefficientsZero("all four coefficients are zero")
    if abs(a3) < 1e-14 * scale:
        if abs(a2) < 1e-14 * scale:
            if abs(a1) < 1e-14 * scale:
                raise AllCoefficientsZero("cubic, quadratic and linear coefficients are zero")
            return [-a0 / a1]
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc < 0.0:
            return []
        sq = math.sqrt(disc)
        # numerically stable quadratic roots
        q = -0.5 * (a1 + math.copysign(sq, a1))
        if q == 0.0:
            return [0.0]
        return _dedupe(sorted([q / a2, a0 / q]))

    # depressed cubic t^3 + pp*t + qq with x = t - a2/(3 a3)
    inv = 1.0 / a3
    b, c, d = a2 * inv, a1 * inv, a0 * inv
    shift = b / 3.0
    pp = c - b * b / 3.0
    qq = 2.0 * b**3 / 27.0 - b * c / 3.0 + d

    half_q = qq / 2.0
    rad = half_q * half_q + pp**3 / 27.0
    if rad > 0.0:
        # one real root (Cardano)
        sq = math.sqrt(rad)
        u = math.copysign(abs(-half_q + sq) ** (1.0 / 3.0), -half_q + sq)
        v = math.copysign(abs(-half_q - sq) ** (1.0 / 3.0), -half_q - sq)
        roots = [u + v - shift]
    elif pp == 0.0:
        # rad <= 0 with pp == 0 forces qq == 0: triple root
        roots = [-shift, -shift, -shift]
    else:
        # three real roots (trigonometric form, pp < 0 here)
        m = 2.0 * math.sqrt(-pp / 3.0)
        arg = max(-1.0, min(1.0, 3.0 * qq / (pp * m)))
        theta = math.acos(arg) / 3.0
        roots = [m * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)]

    return _dedupe(sorted(_polish(r, a3, a2, a1, a0) for r in roots))


def _dedupe(roots: list[float], tol: float = 1e-7) -> list[float]:
    """Collapse repeated roots that the closed forms report with multiplicity."""
    out: list[float] = []
    for r in roots:
        if out and abs(r - out[-1]) <= tol * max(1.0, abs(r)):
            continue
        out.append(r)
    return out


def stationary_points(coeffs: TraceCoeffs | DetCoeffs) -> CubicStationaryPoints:
    """Roots of the derivative of the cubic-in-z^2 polynomial.

    For q(x) = c3*x^3 - c2*x^2 + c1*x + const, q'(x) = 0 at
    (c2 +/- sqrt(c2^2 - 3*c1*c3)) / (3*c3).
    """
    c3, c2, c1 = coeffs._cubic()
    radicand = c2 * c2 - 3.0 * c1 * c3
    if radicand < 0.0:
        return CubicStationaryPoints(lower=math.nan, upper=math.nan, real_flag=False)
    sq = math.sqrt(radicand)
    return CubicStationaryPoints(lower=(c2 - sq) / (3.0 * c3), upper=(c2 + sq) / (3.0 * c3), real_flag=True)


_POSITIVE_TOL = 1e-12


def _real_positive(sp: CubicStationaryPoints) -> bool:
    return sp.real_flag and sp.lower > _POSITIVE_TOL


def classify_regime(p: ModelParams) -> Regime:
    """Classify parameters by the behavior of the trace/determinant cubics.

    The subtle region (e.g. determinant dipping negative while the origin is
    still barely stable) is reported as MIXED_CASE rather than guessed.
    """
    tc = TraceCoeffs.from_params(p)
    if tc.c0 > 0.0:
        return Regime.SADDLE_ORIGIN
    dc = DetCoeffs.from_params(p)
    zeta = stationary_points(dc)
    xi = stationary_points(tc)
    if _real_positive(zeta) and _real_positive(xi) and det_poly_at(math.sqrt(zeta.lower), p) > 0.0:
        tr_at_xi = trace_poly_at(math.sqrt(xi.lower), p)
        if tr_at_xi > 0.0 and tc.c0 < 0.0:
            return Regime.HOPF_WINDOW
        if tr_at_xi < 0.0:
            return Regime.ALWAYS_STABLE
    return Regime.MIXED_CASE


def thm3_condition(p: ModelParams) -> bool:
    """Sufficient condition for twin spike cycles just past the pitchfork.

    Both inequalities are evaluated with the trace coefficients at the
    critical basal sensitivity mu0 = d/a (where c0 = 0):

        d^3/(3a) < k < k_s * (c2 - sqrt(c2^2 - 4*c1*c3)) / (2*c3)
    """
    pc = p.replace(mu0=p.d / p.a)
    tc = TraceCoeffs.from_params(pc)
    if not p.k > p.d**3 / (3.0 * p.a):
        return False
    radicand = tc.c2 * tc.c2 - 4.0 * tc.c1 * tc.c3
    if radicand < 0.0:
        return False
    bound = p.k_s * (tc.c2 - math.sqrt(radicand)) / (2.0 * tc.c3)
    return p.k < bound
