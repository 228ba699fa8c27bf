"""Compartmental epidemic simulation, case-series fitting, and honest charts."""

from . import errors
from ._kernels import BACKEND
from .chart import (
    ChartSpec,
    CurveReport,
    LintFinding,
    SeriesRef,
    chart_spec_from_json,
    classify_propagated,
    findings_json,
    lint_chart,
    render_chart,
    scale_map,
)
from .epimodel import (
    CompartmentState,
    ModelKind,
    ModelParams,
    Trajectory,
    basic_reproduction_number,
    default_initial_state,
    derivative,
    endemic_equilibrium,
    integrate,
    peak,
)
from .fitseries import (
    LogisticFit,
    SirFit,
    fit_logistic,
    fit_report,
    fit_report_json,
    fit_sir,
    logistic_value,
    project,
)
from .ingest import (
    AlignedSeries,
    RegionSeries,
    SummaryStats,
    align_p0,
    derive_cumulative,
    parse_timeseries,
    serialize_csv,
    serialize_json,
    summary_stats,
    summary_table,
    summary_table_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AlignedSeries",
    "ChartSpec",
    "CompartmentState",
    "CurveReport",
    "LintFinding",
    "LogisticFit",
    "ModelKind",
    "ModelParams",
    "RegionSeries",
    "SeriesRef",
    "SirFit",
    "SummaryStats",
    "Trajectory",
    "align_p0",
    "basic_reproduction_number",
    "chart_spec_from_json",
    "classify_propagated",
    "default_initial_state",
    "derivative",
    "derive_cumulative",
    "endemic_equilibrium",
    "errors",
    "findings_json",
    "fit_logistic",
    "fit_report",
    "fit_report_json",
    "fit_sir",
    "integrate",
    "lint_chart",
    "logistic_value",
    "parse_timeseries",
    "peak",
    "project",
    "render_chart",
    "scale_map",
    "serialize_csv",
    "serialize_json",
    "summary_stats",
    "summary_table",
    "summary_table_csv",
]
