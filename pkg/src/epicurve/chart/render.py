"""Deterministic SVG 1.1 rendering of epidemic series.

Styling contract (kept fixed so golden-file tests stay stable): 4-color
palette, 1px series strokes, monospace text, light gridlines, log-axis ticks
at powers of 10.  Panels are emitted as translated ``<g>`` groups whose
contents use panel-local coordinates; in dual mode (linear left, log10
right) both panels therefore carry identical x tick positions.

Nonpositive values cannot be drawn on a log panel; they are omitted, never
clamped, and the linter's R0 rule discloses every omission.
"""

from __future__ import annotations

import datetime as dt
from xml.sax.saxutils import escape

from ..errors import NoDataError, NonpositiveLogError
from ..ingest import align_p0, summary_stats
from .base import ChartSpec
from .scales import day_tick_step, linear_ticks, log_ticks, scale_map

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
BACKGROUND = "#ffffff"
AXIS_COLOR = "#444444"
GRID_COLOR = "#dddddd"
TEXT_COLOR = "#222222"

MARGIN_LEFT = 64
MARGIN_RIGHT = 16
MARGIN_TOP = 58
MARGIN_BOTTOM = 48
PANEL_GAP = 56


def _px(value: float) -> str:
    return format(float(value), ".2f")


def _num(value: float) -> str:
    value = float(value)
    if value == int(value) and abs(value) < 1e7:
        return str(int(value))
    return format(value, "g")


def _prepare_points(spec: ChartSpec, data):
    """Resolve refs to (ref, xs, ys) triples plus the calendar origin."""
    for ref in spec.series_refs:
        if ref.region not in data:
            raise NoDataError(f"series {ref.label} not found in the data")
        if len(data[ref.region]) == 0:
            raise NoDataError(f"series {ref.label} is empty")
    if spec.x_mode == "days_since_p0":
        out = []
        for ref in spec.series_refs:
            _, aligned = align_p0(data[ref.region])
            out.append((ref, aligned.days.astype(float),
                        aligned.column(ref.column).astype(float)))
        return out, None
    date_min = min(data[ref.region].dates[0] for ref in spec.series_refs)
    out = []
    for ref in spec.series_refs:
        series = data[ref.region]
        xs = [(d - date_min).days for d in series.dates]
        out.append((ref, [float(x) for x in xs],
                    series.column(ref.column).astype(float)))
    return out, date_min


def _y_setup(scale: str, points):
    """Domain and ticks for one panel's y axis."""
    all_vals = [v for _, _, ys in points for v in ys]
    if scale == "linear":
        hi = max(all_vals) if all_vals else 0.0
        ticks = linear_ticks(0.0, hi if hi > 0 else 1.0)
        return (0.0, ticks[-1]), ticks
    positive = [v for v in all_vals if v > 0]
    if not positive:
        raise NonpositiveLogError(
            "all points are nonpositive; nothing can be drawn on a log10 axis"
        )
    ticks = log_ticks(min(positive), max(positive))
    return (ticks[0], ticks[-1]), ticks


def _x_setup(points, date_min):
    xmax = max((max(xs) for _, xs, _ in points if len(xs)), default=0.0)
    if xmax <= 0:
        xmax = 1.0
    step = day_tick_step(xmax)
    tick_values = [float(v) for v in range(0, int(xmax) + 1, step)]
    if date_min is None:
        labels = [_num(v) for v in tick_values]
        caption = "days since first case"
    else:
        labels = [(date_min + dt.timedelta(days=int(v))).isoformat()
                  for v in tick_values]
        caption = "date"
    return (0.0, xmax), tick_values, labels, caption


def _panel_axes(parts, scale, panel_w, plot_h, x_domain, x_ticks, x_labels,
                y_domain, y_ticks):
    for v in y_ticks:
        y = scale_map(scale, y_domain, (plot_h, 0.0), v)
        parts.append(f'<line x1="0.00" y1="{_px(y)}" x2="{_px(panel_w)}" '
                     f'y2="{_px(y)}" stroke="{GRID_COLOR}" stroke-width="1"/>')
        parts.append(f'<text x="-7.00" y="{_px(y + 3.5)}" text-anchor="end" '
                     f'fill="{TEXT_COLOR}">{_num(v)}</text>')
    for v, label in zip(x_ticks, x_labels):
        x = scale_map("linear", x_domain, (0.0, panel_w), v)
        parts.append(f'<line x1="{_px(x)}" y1="{_px(plot_h)}" x2="{_px(x)}" '
                     f'y2="{_px(plot_h + 4)}" stroke="{AXIS_COLOR}" '
                     f'stroke-width="1"/>')
        parts.append(f'<text x="{_px(x)}" y="{_px(plot_h + 16)}" '
                     f'text-anchor="middle" fill="{TEXT_COLOR}">'
                     f'{escape(label)}</text>')
    parts.append(f'<line x1="0.00" y1="0.00" x2="0.00" y2="{_px(plot_h)}" '
                 f'stroke="{AXIS_COLOR}" stroke-width="1"/>')
    parts.append(f'<line x1="0.00" y1="{_px(plot_h)}" x2="{_px(panel_w)}" '
                 f'y2="{_px(plot_h)}" stroke="{AXIS_COLOR}" stroke-width="1"/>')


def _panel_lines(parts, scale, points, panel_w, plot_h, x_domain, y_domain):
    for idx, (ref, xs, ys) in enumerate(points):
        color = PALETTE[idx % len(PALETTE)]
        coords = []
        for x, y in zip(xs, ys):
            if scale == "log10" and y <= 0:
                continue  # omitted, disclosed by lint rule R0
            px = scale_map("linear", x_domain, (0.0, panel_w), x)
            py = scale_map(scale, y_domain, (plot_h, 0.0), y)
            coords.append(f"{_px(px)},{_px(py)}")
        if coords:
            parts.append(f'<polyline points="{" ".join(coords)}" fill="none" '
                         f'stroke="{color}" stroke-width="1"/>')


def _panel_boxes(parts, scale, points, panel_w, plot_h, y_domain):
    slot = panel_w / len(points)
    half = min(28.0, 0.3 * slot)

    def ok(value):
        return scale != "log10" or value > 0

    def ypx(value):
        return scale_map(scale, y_domain, (plot_h, 0.0), value)

    for idx, (ref, _, ys) in enumerate(points):
        color = PALETTE[idx % len(PALETTE)]
        st = summary_stats(ys)
        cx = (idx + 0.5) * slot
        if ok(st.min) and ok(st.p25):
            parts.append(_vline(cx, ypx(st.p25), ypx(st.min), color))
            parts.append(_hline(cx - half / 2, cx + half / 2, ypx(st.min), color))
        if ok(st.p75) and ok(st.max):
            parts.append(_vline(cx, ypx(st.max), ypx(st.p75), color))
            parts.append(_hline(cx - half / 2, cx + half / 2, ypx(st.max), color))
        if ok(st.p25) and ok(st.p75):
            top, bottom = ypx(st.p75), ypx(st.p25)
            parts.append(
                f'<rect x="{_px(cx - half)}" y="{_px(top)}" '
                f'width="{_px(2 * half)}" height="{_px(bottom - top)}" '
                f'fill="none" stroke="{color}" stroke-width="1"/>'
            )
        if ok(st.p50):
            parts.append(_hline(cx - half, cx + half, ypx(st.p50), color))
        if ok(st.mean):
            parts.append(
                f'<line x1="{_px(cx - half)}" y1="{_px(ypx(st.mean))}" '
                f'x2="{_px(cx + half)}" y2="{_px(ypx(st.mean))}" '
                f'stroke="{color}" stroke-width="1" stroke-dasharray="2,2"/>'
            )
        parts.append(f'<text x="{_px(cx)}" y="{_px(plot_h + 16)}" '
                     f'text-anchor="middle" fill="{TEXT_COLOR}">'
                     f'{escape(ref.label)}</text>')


def _vline(x, y1, y2, color):
    return (f'<line x1="{_px(x)}" y1="{_px(y1)}" x2="{_px(x)}" '
            f'y2="{_px(y2)}" stroke="{color}" stroke-width="1"/>')


def _hline(x1, x2, y, color):
    return (f'<line x1="{_px(x1)}" y1="{_px(y)}" x2="{_px(x2)}" '
            f'y2="{_px(y)}" stroke="{color}" stroke-width="1"/>')


def render_chart(spec: ChartSpec, data) -> bytes:
    """Render the chart to SVG bytes; identical inputs give identical bytes."""
    points, date_min = _prepare_points(spec, data)
    panels = ["linear", "log10"] if spec.y_scale == "dual" else [spec.y_scale]
    n_panels = len(panels)
    panel_w = (spec.width - MARGIN_LEFT - MARGIN_RIGHT
               - (n_panels - 1) * PANEL_GAP) / n_panels
    plot_h = spec.height - MARGIN_TOP - MARGIN_BOTTOM
    if panel_w <= 0 or plot_h <= 0:
        raise NoDataError("chart frame too small for the fixed margins")

    x_domain, x_ticks, x_labels, x_caption = _x_setup(points, date_min)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" '
        f'viewBox="0 0 {spec.width} {spec.height}" '
        f'font-family="monospace" font-size="10">',
        f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" '
        f'fill="{BACKGROUND}"/>',
        f'<text x="{_px(spec.width / 2)}" y="20.00" text-anchor="middle" '
        f'font-size="14" fill="{TEXT_COLOR}">{escape(spec.title)}</text>',
    ]

    if spec.panel_kind == "line":
        x_legend = float(MARGIN_LEFT)
        for idx, (ref, _, _) in enumerate(points):
            color = PALETTE[idx % len(PALETTE)]
            parts.append(f'<rect x="{_px(x_legend)}" y="30.00" width="10.00" '
                         f'height="10.00" fill="{color}"/>')
            parts.append(f'<text x="{_px(x_legend + 14)}" y="39.00" '
                         f'fill="{TEXT_COLOR}">{escape(ref.label)}</text>')
            x_legend += 14 + 7 * len(ref.label) + 18

    for p, scale in enumerate(panels):
        x0 = MARGIN_LEFT + p * (panel_w + PANEL_GAP)
        parts.append(f'<g class="panel panel-{scale}" '
                     f'transform="translate({_px(x0)},{_px(MARGIN_TOP)})">')
        caption = {"linear": "linear scale", "log10": "log scale"}[scale]
        parts.append(f'<text x="0.00" y="-8.00" font-size="11" '
                     f'fill="{TEXT_COLOR}">{caption}</text>')
        y_domain, y_ticks = _y_setup(scale, points)
        if spec.panel_kind == "line":
            _panel_axes(parts, scale, panel_w, plot_h, x_domain, x_ticks,
                        x_labels, y_domain, y_ticks)
            _panel_lines(parts, scale, points, panel_w, plot_h, x_domain,
                         y_domain)
            parts.append(f'<text x="{_px(panel_w / 2)}" '
                         f'y="{_px(plot_h + 32)}" text-anchor="middle" '
                         f'fill="{TEXT_COLOR}">{x_caption}</text>')
        else:
            _panel_axes(parts, scale, panel_w, plot_h, (0.0, 1.0), [], [],
                        y_domain, y_ticks)
            _panel_boxes(parts, scale, points, panel_w, plot_h, y_domain)
        parts.append("</g>")

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")
