"""Numerical laboratory for spiking nonlinear opinion dynamics."""

from .algebra import (
    CubicStationaryPoints,
    DetCoeffs,
    Regime,
    TraceCoeffs,
    classify_regime,
    cubic_real_roots,
    det_poly_at,
    stationary_points,
    thm3_condition,
    trace_poly_at,
)
from .bifurcation import (
    ThresholdCurve,
    ThresholdReport,
    input_thresholds,
    pitchfork_mu0,
    threshold_curve,
    threshold_input_at,
    trace_roots_z,
)
from .equilibria import Branch, Equilibrium, Stability, classify, continue_branch, find_fixed_points
from .errors import (
    AllCoefficientsZero,
    DomainError,
    NoFold,
    NotAFixedPoint,
    QuadratureDivergence,
    RegimeMismatch,
    SnodError,
    StepSizeUnderflow,
    TooShort,
)
from .geometry import FoldPoints, fold_points, s_dot_level, singular_period, z_nullcline, z_nullcline_slope
from .model import Derivative, ModelParams, State, jacobian, phi, psi, residual_h, vector_field
from .simulate import (
    BoundingBox,
    IntegratorConfig,
    SpikeMetrics,
    Trajectory,
    bounding_box,
    detect_spikes,
    integrate,
    integrate_batch,
    limit_cycle_envelope,
    oscillation_metrics,
)
from .sweeps import (
    DiagramRow,
    HeatmapCell,
    HeatmapResult,
    diagram_in_b,
    diagram_in_mu0,
    fI_curve,
    frequency_heatmap,
    write_diagram_csv,
    write_fi_csv,
    write_heatmap_csv,
    write_thresholds_csv,
)

__version__ = "0.1.0"
