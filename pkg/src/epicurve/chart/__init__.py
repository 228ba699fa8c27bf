"""Chart rendering and linting under explicit scale/alignment choices."""

from .base import (
    RULES,
    ChartSpec,
    LintFinding,
    SeriesRef,
    chart_spec_from_json,
    chart_spec_to_json,
    findings_json,
)
from .curves import CurveReport, classify_propagated, smooth_centered
from .lint import lint_chart
from .render import render_chart
from .scales import scale_map

__all__ = [
    "RULES",
    "ChartSpec",
    "CurveReport",
    "LintFinding",
    "SeriesRef",
    "chart_spec_from_json",
    "chart_spec_to_json",
    "classify_propagated",
    "findings_json",
    "lint_chart",
    "render_chart",
    "scale_map",
    "smooth_centered",
]
