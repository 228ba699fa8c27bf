"""Axis scale mapping and tick placement."""

from __future__ import annotations

import math

from ..errors import NonpositiveLogError

SCALES = ("linear", "log10")


def scale_map(scale: str, data_domain, pixel_range, value: float) -> float:
    """Map ``value`` from the data domain to pixel coordinates.

    ``linear`` is an affine map; ``log10`` is the same affine map applied to
    log10 of everything, so equal value ratios land equal pixel distances
    apart.
    """
    lo, hi = float(data_domain[0]), float(data_domain[1])
    a, b = float(pixel_range[0]), float(pixel_range[1])
    if not lo < hi:
        raise ValueError(f"domain must satisfy lo < hi, got [{lo}, {hi}]")
    if scale == "linear":
        frac = (float(value) - lo) / (hi - lo)
    elif scale == "log10":
        if lo <= 0:
            raise ValueError(f"log10 domain must be positive, got [{lo}, {hi}]")
        if value <= 0:
            raise NonpositiveLogError(
                f"value {value} cannot be placed on a log10 axis"
            )
        frac = (math.log10(float(value)) - math.log10(lo)) / (
            math.log10(hi) - math.log10(lo)
        )
    else:
        raise ValueError(f"unknown scale {scale!r}")
    return a + frac * (b - a)


def nice_step(span: float, target: int = 5) -> float:
    """A 1/2/5-progression step giving roughly ``target`` intervals."""
    if span <= 0:
        return 1.0
    raw = span / target
    magnitude = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        if raw <= mult * magnitude:
            return mult * magnitude
    return 10.0 * magnitude


def linear_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Ticks at nice multiples covering [lo, hi]; the last tick >= hi."""
    if hi <= lo:
        hi = lo + 1.0
    step = nice_step(hi - lo, target)
    first = math.floor(lo / step)
    last = math.ceil(hi / step)
    return [k * step for k in range(first, last + 1)]


def log_ticks(lo: float, hi: float) -> list[float]:
    """Ticks at every power of 10 from floor(lo) to ceil(hi)."""
    if lo <= 0:
        raise ValueError("log ticks need a positive domain")
    first = math.floor(math.log10(lo))
    last = math.ceil(math.log10(hi))
    if last == first:
        last += 1
    return [10.0 ** k for k in range(first, last + 1)]


def day_tick_step(span_days: float, target: int = 8) -> int:
    """Calendar-friendly tick step in whole days."""
    for step in (1, 2, 5, 7, 14, 30, 60, 90, 180, 365):
        if span_days / step <= target:
            return step
    return 730
