"""Figure-generation scripts over the snod CLI's CSV/JSON outputs."""

from .schemas import (
    DIAGRAM_B_HEADER,
    DIAGRAM_MU0_HEADER,
    FI_HEADER,
    HEATMAP_HEADER,
    NULLCLINES_HEADER,
    THRESHOLDS_HEADER,
    SchemaError,
    load_diagram,
    load_fi,
    load_heatmap,
    load_nullclines,
    load_thresholds,
)

__all__ = [
    "DIAGRAM_B_HEADER",
    "DIAGRAM_MU0_HEADER",
    "FI_HEADER",
    "HEATMAP_HEADER",
    "NULLCLINES_HEADER",
    "THRESHOLDS_HEADER",
    "SchemaError",
    "load_diagram",
    "load_fi",
    "load_heatmap",
    "load_nullclines",
    "load_thresholds",
]
