"""Shape analysis of a daily incidence curve.

Propagated (person-to-person) outbreaks start with a gradually increasing
upslope and, once susceptible hosts are exhausted, fall off rapidly after the
peak.  The detector works on a centered 7-day mean of the daily confirmed
counts; the 7-day run lengths and the 50% post-peak threshold are
conventions, documented here rather than tuned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InsufficientDataError
from ..ingest import RegionSeries

SMOOTH_WINDOW = 7
RUN_LENGTH = 7
DOWNSLOPE_FRACTION = 0.5
MIN_DAYS = 14


@dataclass(frozen=True)
class CurveReport:
    """upslope_start / peak_day are day indices into the series, or None."""

    upslope_start: int | None
    peak_day: int | None
    downslope_detected: bool


def smooth_centered(values, window: int = SMOOTH_WINDOW) -> np.ndarray:
    """Centered moving mean; windows shrink at the edges."""
    arr = np.asarray(values, dtype=np.float64)
    n = arr.shape[0]
    half = window // 2
    csum = np.concatenate(([0.0], np.cumsum(arr)))
    lo = np.maximum(np.arange(n) - half, 0)
    hi = np.minimum(np.arange(n) + half + 1, n)
    return (csum[hi] - csum[lo]) / (hi - lo)


def classify_propagated(series: RegionSeries) -> CurveReport:
    """Locate the upslope, peak, and post-peak downslope of the smoothed
    daily confirmed curve."""
    if len(series) < MIN_DAYS:
        raise InsufficientDataError(
            f"need at least {MIN_DAYS} days, got {len(series)}"
        )
    sm = smooth_centered(series.daily_confirmed)
    n = sm.shape[0]

    upslope_start = None
    diffs = np.diff(sm)
    for k in range(n - RUN_LENGTH + 1):
        window = diffs[k:k + RUN_LENGTH - 1]
        if np.all(window >= 0.0) and sm[k + RUN_LENGTH - 1] > sm[k]:
            upslope_start = k
            break

    peak_day = None
    k_max = int(np.argmax(sm))
    followers = sm[k_max + 1:k_max + 1 + RUN_LENGTH]
    if followers.shape[0] == RUN_LENGTH and np.all(followers < sm[k_max]):
        peak_day = k_max

    downslope = bool(
        peak_day is not None
        and np.any(sm[peak_day + 1:] < DOWNSLOPE_FRACTION * sm[peak_day])
    )
    return CurveReport(upslope_start=upslope_start, peak_day=peak_day,
                       downslope_detected=downslope)
