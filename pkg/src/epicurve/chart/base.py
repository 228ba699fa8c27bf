"""Chart specification and lint-finding types, plus their JSON wire forms."""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import ParseError
from ..ingest import DAILY_COLUMNS, TOTAL_COLUMNS

X_MODES = ("calendar_date", "days_since_p0")
Y_SCALES = ("linear", "log10", "dual")  # dual = linear left, log10 right
PANEL_KINDS = ("line", "boxplot")
VALID_COLUMNS = DAILY_COLUMNS + TOTAL_COLUMNS

# Registered lint rules.  Severity "warning" drives the CLI exit code.
RULES = {
    "R0": ("note", "nonpositive points omitted on a log panel"),
    "R1": ("warning", "linear scale hides multi-decade variation"),
    "R2": ("note", "group comparison is easier on a log scale"),
    "R3": ("note", "the x-axis choice hides part of the picture"),
    "R4": ("note", "testing growth may explain case growth"),
    "R5": ("note", "unusual aspect ratio"),
}


@dataclass(frozen=True)
class SeriesRef:
    """Selects one column of one region's series."""

    region: str
    column: str = "total_confirmed"

    def __post_init__(self):
        if self.column not in VALID_COLUMNS:
            raise ParseError(
                f"unknown column {self.column!r}; expected one of "
                f"{', '.join(VALID_COLUMNS)}"
            )

    @property
    def label(self) -> str:
        return f"{self.region}:{self.column}"


@dataclass(frozen=True)
class ChartSpec:
    """Declarative chart description consumed by the renderer and linter."""

    title: str
    series_refs: tuple[SeriesRef, ...]
    x_mode: str = "calendar_date"
    y_scale: str = "linear"
    panel_kind: str = "line"
    width: int = 960
    height: int = 480
    testing_ref: SeriesRef | None = None

    def __post_init__(self):
        object.__setattr__(self, "series_refs", tuple(self.series_refs))
        if not self.series_refs:
            raise ParseError("chart must reference at least one series")
        if self.x_mode not in X_MODES:
            raise ParseError(f"unknown x_mode {self.x_mode!r}")
        if self.y_scale not in Y_SCALES:
            raise ParseError(f"unknown y_scale {self.y_scale!r}")
        if self.panel_kind not in PANEL_KINDS:
            raise ParseError(f"unknown panel_kind {self.panel_kind!r}")
        if self.width <= 0 or self.height <= 0:
            raise ParseError("width and height must be positive")


def _ref_from_obj(obj, where: str) -> SeriesRef:
    if not isinstance(obj, dict) or "region" not in obj:
        raise ParseError(f"{where}: expected an object with a region")
    return SeriesRef(region=str(obj["region"]),
                     column=str(obj.get("column", "total_confirmed")))


def chart_spec_from_json(text) -> ChartSpec:
    """Parse a ChartSpec JSON document."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: invalid JSON: {exc.msg}")
    if not isinstance(obj, dict):
        raise ParseError("chart spec must be a JSON object")
    refs = obj.get("series_refs")
    if not isinstance(refs, list) or not refs:
        raise ParseError("series_refs must be a non-empty list")
    testing = obj.get("testing_ref")
    return ChartSpec(
        title=str(obj.get("title", "")),
        series_refs=tuple(_ref_from_obj(r, f"series_refs[{k}]")
                          for k, r in enumerate(refs)),
        x_mode=str(obj.get("x_mode", "calendar_date")),
        y_scale=str(obj.get("y_scale", "linear")),
        panel_kind=str(obj.get("panel_kind", "line")),
        width=int(obj.get("width", 960)),
        height=int(obj.get("height", 480)),
        testing_ref=None if testing is None
        else _ref_from_obj(testing, "testing_ref"),
    )


def chart_spec_to_json(spec: ChartSpec) -> str:
    obj = {
        "title": spec.title,
        "series_refs": [{"region": r.region, "column": r.column}
                        for r in spec.series_refs],
        "x_mode": spec.x_mode,
        "y_scale": spec.y_scale,
        "panel_kind": spec.panel_kind,
        "width": spec.width,
        "height": spec.height,
    }
    if spec.testing_ref is not None:
        obj["testing_ref"] = {"region": spec.testing_ref.region,
                              "column": spec.testing_ref.column}
    return json.dumps(obj, indent=2) + "\n"


@dataclass(frozen=True)
class LintFinding:
    """One finding from the chart linter."""

    rule_id: str
    severity: str
    message: str
    subject: str

    def __post_init__(self):
        if self.rule_id not in RULES:
            raise ValueError(f"unregistered rule id {self.rule_id!r}")
        if self.severity not in ("warning", "note"):
            raise ValueError(f"invalid severity {self.severity!r}")


def findings_json(findings) -> str:
    """Findings as a JSON array of {rule_id, severity, message, subject}."""
    return json.dumps(
        [{"rule_id": f.rule_id, "severity": f.severity, "message": f.message,
          "subject": f.subject} for f in findings],
        indent=2,
    ) + "\n"
