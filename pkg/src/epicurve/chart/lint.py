"""Lint a chart specification against honest-presentation rules.

The registered rules:

* R0 -- log panels omit nonpositive points; disclose how many.
* R1 -- linear scale with data spanning >= 2 orders of magnitude (ratio of
  max to smallest positive value >= 100): recommend a semi-log companion.
* R2 -- comparing several regions on a linear scale: recommend log.
* R3 -- days-since-first-case alignment hides differing onset dates; a
  calendar axis with several regions hides relative outbreak ages.  Either
  x-axis choice deserves a disclosure.
* R4 -- a supplied testing-volume series grew more than 4x between its first
  and last quartile of days: case growth may partly reflect testing growth.
* R5 -- width:height outside [1:2, 5:1].

Linting never raises; unresolvable series references are simply skipped
(rendering, not linting, is where they are hard errors).
"""

from __future__ import annotations

from ..errors import NoCasesError
from ..ingest import align_p0
from .base import ChartSpec, LintFinding

R1_DECADE_RATIO = 100.0
R4_GROWTH_FACTOR = 4.0
R5_RATIO_BOUNDS = (0.5, 5.0)


def _resolve(ref, data):
    series = data.get(ref.region)
    if series is None or len(series) == 0:
        return None
    return series.column(ref.column)


def _log_panel_shown(spec: ChartSpec) -> bool:
    return spec.y_scale in ("log10", "dual")


def _linear_only(spec: ChartSpec) -> bool:
    return spec.y_scale == "linear"


def lint_chart(spec: ChartSpec, data) -> list[LintFinding]:
    """Evaluate every rule; findings are ordered by rule id then subject."""
    findings: list[LintFinding] = []
    findings += _rule_r0(spec, data)
    findings += _rule_r1(spec, data)
    findings += _rule_r2(spec, data)
    findings += _rule_r3(spec, data)
    findings += _rule_r4(spec, data)
    findings += _rule_r5(spec)
    findings.sort(key=lambda f: (f.rule_id, f.subject))
    return findings


def _rule_r0(spec, data):
    if not _log_panel_shown(spec):
        return []
    out = []
    for ref in spec.series_refs:
        col = _resolve(ref, data)
        if col is None:
            continue
        omitted = int((col <= 0).sum())
        if omitted:
            out.append(LintFinding(
                rule_id="R0", severity="note", subject=ref.label,
                message=(f"{omitted} nonpositive point(s) are omitted from "
                         f"the log panel rather than clamped"),
            ))
    return out


def _rule_r1(spec, data):
    if not _linear_only(spec):
        return []
    out = []
    for ref in spec.series_refs:
        col = _resolve(ref, data)
        if col is None:
            continue
        positive = col[col > 0]
        if positive.size == 0:
            continue
        ratio = float(col.max()) / float(positive.min())
        if ratio >= R1_DECADE_RATIO:
            out.append(LintFinding(
                rule_id="R1", severity="warning", subject=ref.label,
                message=(f"values span a {ratio:.0f}x range; a linear scale "
                         f"compresses the early outbreak, so a semi-log view "
                         f"is recommended (log scales can confuse lay "
                         f"readers, so showing both views is safest)"),
            ))
    return out


def _rule_r2(spec, data):
    if not _linear_only(spec):
        return []
    regions = sorted({ref.region for ref in spec.series_refs
                      if _resolve(ref, data) is not None})
    if len(regions) < 2:
        return []
    return [LintFinding(
        rule_id="R2", severity="note", subject="regions:" + ",".join(regions),
        message=("comparing population groups is easier on a log scale, "
                 "where equal growth rates have equal slopes"),
    )]


def _rule_r3(spec, data):
    p0_dates = {}
    for ref in spec.series_refs:
        series = data.get(ref.region)
        if series is None or len(series) == 0 or ref.region in p0_dates:
            continue
        try:
            _, aligned = align_p0(series)
        except NoCasesError:
            continue
        p0_dates[ref.region] = aligned.p0_date
    if len(p0_dates) < 2:
        return []
    ordered = sorted(p0_dates.items(), key=lambda kv: (kv[1], kv[0]))
    first_region, first_date = ordered[0]
    offsets = ", ".join(
        f"{region} +{(date - first_date).days}d"
        for region, date in ordered[1:]
    )
    if spec.x_mode == "days_since_p0":
        if len(set(p0_dates.values())) < 2:
            return []  # onsets coincide; the alignment hides nothing
        message = (f"day-0 alignment hides differing onset dates: first case "
                   f"in {first_region} on {first_date.isoformat()}, then "
                   f"{offsets}; disclose the offsets")
    else:
        message = (f"a calendar axis hides relative outbreak age (onsets: "
                   f"{first_region} {first_date.isoformat()}, then {offsets}); "
                   f"consider also showing a days-since-first-case view")
    return [LintFinding(rule_id="R3", severity="note", subject="x-axis",
                        message=message)]


def _rule_r4(spec, data):
    if spec.testing_ref is None:
        return []
    col = _resolve(spec.testing_ref, data)
    if col is None or col.size < 4:
        return []
    q = max(1, col.size // 4)
    first = float(col[:q].mean())
    last = float(col[-q:].mean())
    if last > R4_GROWTH_FACTOR * first:
        grown = f"{last / first:.1f}x" if first > 0 else "from zero"
        return [LintFinding(
            rule_id="R4", severity="note", subject=spec.testing_ref.label,
            message=(f"testing volume grew {grown} between the first and "
                     f"last quartile of days; apparent case growth may "
                     f"partly reflect testing growth"),
        )]
    return []


def _rule_r5(spec):
    ratio = spec.width / spec.height
    lo, hi = R5_RATIO_BOUNDS
    if lo <= ratio <= hi:
        return []
    return [LintFinding(
        rule_id="R5", severity="note", subject="frame",
        message=(f"aspect ratio {ratio:.2f}:1 is outside the customary "
                 f"[1:2, 5:1] band and can exaggerate or flatten slopes"),
    )]
