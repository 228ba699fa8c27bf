#!/usr/bin/env python3
"""Regenerate everything under fixtures/.

The national and state case series are synthetic reconstructions: the public
archive they stand in for is no longer downloadable, so each daily-confirmed
column is built to reproduce the published summary indicators instead --
count, mean, sample std, min, max, and the three quartiles (see
fixtures/README.md for the calibration table).

Construction, fully deterministic (no RNG): the min/quartile/max values are
pinned at their exact sorted ranks, the slots between them are filled by
geometric interpolation, then bounded sum-preserving transfers tune the sum
and the sum of squares; the final series is the values in ascending order,
i.e. a monotone outbreak curve peaking on the last day.

Run from anywhere: python3 scripts/make_fixtures.py
"""

from __future__ import annotations

import datetime as dt
import json
import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from epicurve.ingest import RegionSeries, serialize_csv, serialize_json  # noqa: E402

COARSE_CUT = 200_000  # switch from bulk transfers to unit transfers


def _exact_sq_sum(d) -> int:
    return int(sum(int(v) * int(v) for v in d))


def _fix_sum(d, total, lo, hi, free):
    delta = total - int(d.sum())
    while delta != 0:
        step = max(1, abs(delta) // len(free))
        moved = False
        for k in free:
            if delta == 0:
                break
            if delta > 0:
                add = min(step, int(hi[k] - d[k]), delta)
                if add > 0:
                    d[k] += add
                    delta -= add
                    moved = True
            else:
                sub = min(step, int(d[k] - lo[k]), -delta)
                if sub > 0:
                    d[k] -= sub
                    delta += sub
                    moved = True
        if not moved:
            raise RuntimeError("cannot reach the target sum within bounds")
    return d


def _adjust_sq_sum(d, target_q, lo, hi, free, tol):
    """Sum-preserving transfers until |sum(d^2) - target_q| <= tol."""
    for _ in range(200_000):
        dq = target_q - _exact_sq_sum(d)
        if abs(dq) <= tol:
            return d
        donors = [k for k in free if d[k] > lo[k]]
        recips = [k for k in free if d[k] < hi[k]]
        if not donors or not recips:
            raise RuntimeError("no room left for transfers")
        if abs(dq) > COARSE_CUT:
            if dq > 0:
                a = min(donors, key=lambda k: (int(d[k]), k))
                b = max(recips, key=lambda k: (int(d[k]), -k))
            else:
                a = max(donors, key=lambda k: (int(d[k]), -k))
                b = min(recips, key=lambda k: (int(d[k]), k))
            if a == b:
                raise RuntimeError("degenerate transfer pair")
            diff = int(d[b]) - int(d[a])
            denom = 2.0 * diff + 2.0
            ideal = dq / denom if denom != 0 else 1.0
            delta = int(min(max(1.0, ideal), d[a] - lo[a], hi[b] - d[b]))
            d[a] -= delta
            d[b] += delta
        else:
            want = (dq - 2) / 2.0  # target value gap for a unit transfer
            best = None
            for a in donors:
                for b in recips:
                    if a == b:
                        continue
                    gap = int(d[b]) - int(d[a])
                    score = abs(gap - want)
                    if best is None or score < best[0]:
                        best = (score, a, b)
            _, a, b = best
            d[a] -= 1
            d[b] += 1
    raise RuntimeError("sum-of-squares adjustment did not converge")


def _segment_fill(a: int, b: int, m: int) -> list[int]:
    """m interior values between anchors a <= b, geometric when possible."""
    out = []
    for j in range(1, m + 1):
        frac = j / (m + 1)
        if a > 0:
            v = a * (b / a) ** frac
        else:
            v = b * frac * frac  # quadratic ramp out of zero
        out.append(int(round(v)))
    return [min(max(v, a), b) for v in out]


def calibrated_sorted_daily(n, total, std, pins: dict[int, int]) -> np.ndarray:
    """Ascending integer series hitting the pinned order statistics exactly,
    the total exactly, and the sample std within 5e-3."""
    target_q = (n - 1) * std * std + (total * total) / n
    ranks = sorted(pins)
    assert ranks[0] == 0 and ranks[-1] == n - 1

    d = np.zeros(n, dtype=np.int64)
    lo = np.zeros(n, dtype=np.int64)
    hi = np.zeros(n, dtype=np.int64)
    for k, value in pins.items():
        d[k] = lo[k] = hi[k] = value
    for left, right in zip(ranks, ranks[1:]):
        m = right - left - 1
        if m <= 0:
            continue
        fill = _segment_fill(int(pins[left]), int(pins[right]), m)
        for j, v in enumerate(fill):
            k = left + 1 + j
            d[k] = v
            lo[k] = pins[left]
            hi[k] = pins[right]
    free = [k for k in range(n) if k not in pins]

    d = _fix_sum(d, total, lo, hi, free)
    tol = max(2 * (n - 1) * std * 0.003, 4.0)
    d = _adjust_sq_sum(d, target_q, lo, hi, free, tol)
    d = np.sort(d)

    assert int(d.sum()) == total
    for k, value in pins.items():
        assert int(d[k]) == value, (k, int(d[k]), value)
    achieved = float(np.std(d, ddof=1))
    assert abs(achieved - std) < 0.005, achieved
    return d


def scaled_lagged(d, total, lag):
    """Non-negative integer series with the given total, lagging d."""
    n = d.shape[0]
    shifted = np.concatenate([np.zeros(lag, dtype=np.int64), d[:n - lag]])
    ssum = int(shifted.sum())
    out = (shifted * total) // ssum
    rem = total - int(out.sum())
    order = [int(k) for k in np.argsort(-shifted, kind="stable")]
    i = 0
    while rem > 0:
        k = order[i % len(order)]
        if shifted[k] > 0:
            out[k] += 1
            rem -= 1
        i += 1
    return out.astype(np.int64)


def daterange(start: dt.date, n: int):
    return [start + dt.timedelta(days=k) for k in range(n)]


def make_india() -> RegionSeries:
    # Daily confirmed: count 197, mean 12485.41 (sum 2459626), std 18176.75,
    # min 0, p25 27, p50 3344, p75 18205, max 67066.  Quartile ranks are
    # integers for n=197 (0.25 * 196 = 49), so single pins suffice.
    dc = calibrated_sorted_daily(
        n=197, total=2_459_626, std=18_176.75,
        pins={0: 0, 49: 27, 98: 3_344, 147: 18_205, 196: 67_066},
    )
    dr = scaled_lagged(dc, 1_750_629, lag=14)
    dd = scaled_lagged(dc, 48_156, lag=7)
    return RegionSeries.from_daily("India", daterange(dt.date(2020, 1, 30), 197),
                                   dc, dr, dd)


def make_states() -> dict[str, RegionSeries]:
    # For n=168 the quartile ranks are fractional (41.75, 83.5, 125.25), so
    # each quartile is pinned via the two neighbouring order statistics whose
    # linear interpolation gives the published value exactly.
    n = 168
    start = dt.date(2020, 3, 14)
    mh = calibrated_sorted_daily(
        n=n, total=747_995, std=4_350.37,
        pins={0: 3, 41: 552, 42: 552, 83: 2_762, 84: 2_763,
              125: 8_016, 126: 8_016, 167: 14_888},
    )
    kl = calibrated_sorted_daily(
        n=n, total=69_303, std=637.24,
        pins={0: 0, 41: 10, 42: 11, 83: 80, 84: 81,
              125: 642, 126: 645, 167: 2_543},
    )
    ka = calibrated_sorted_daily(
        n=n, total=318_751, std=2_739.65,
        pins={0: 0, 41: 17, 42: 17, 83: 214, 84: 215,
              125: 3_660, 126: 3_660, 167: 9_386},
    )
    out = {}
    for name, dc in (("Maharashtra", mh), ("Kerala", kl), ("Karnataka", ka)):
        dr = scaled_lagged(dc, int(round(0.72 * dc.sum())), lag=14)
        dd = scaled_lagged(dc, int(round(0.02 * dc.sum())), lag=7)
        out[name] = RegionSeries.from_daily(name, daterange(start, n),
                                            dc, dr, dd)
    return out


def make_two_states() -> dict[str, RegionSeries]:
    # First cases 15 days apart: Telangana day 0, Arunachal Pradesh day 15.
    n = 60
    start = dt.date(2020, 3, 2)
    tg = np.array([max(1, int(round(2.0 * 1.08 ** k))) for k in range(n)],
                  dtype=np.int64)
    ap = np.zeros(n, dtype=np.int64)
    for k in range(15, n):
        ap[k] = max(1, int(round(1.1 ** (k - 15))))
    out = {}
    for name, dc in (("Telangana", tg), ("Arunachal Pradesh", ap)):
        dr = scaled_lagged(dc, int(round(0.6 * dc.sum())), lag=10)
        dd = np.zeros(n, dtype=np.int64)
        out[name] = RegionSeries.from_daily(name, daterange(start, n),
                                            dc, dr, dd)
    return out


def make_tiny() -> RegionSeries:
    return RegionSeries.from_daily(
        "Demo", daterange(dt.date(2020, 5, 1), 5),
        [0, 1, 2, 3, 4], [0, 0, 1, 1, 2], [0, 0, 0, 1, 1],
    )


def make_testing_demo() -> dict[str, RegionSeries]:
    # Cases plus a tests-per-day series (stored in daily_confirmed of its own
    # region) whose last-quartile mean is far above 4x its first-quartile
    # mean.
    n = 120
    start = dt.date(2020, 4, 1)
    cases = np.array([int(round(5 * 1.045 ** k)) for k in range(n)],
                     dtype=np.int64)
    tests = np.array([int(round(400 * 1.035 ** k)) for k in range(n)],
                     dtype=np.int64)
    zeros = np.zeros(n, dtype=np.int64)
    return {
        "Sampleland": RegionSeries.from_daily(
            "Sampleland", daterange(start, n), cases,
            scaled_lagged(cases, int(round(0.5 * cases.sum())), 10), zeros),
        "Sampleland Tests": RegionSeries.from_daily(
            "Sampleland Tests", daterange(start, n), tests, zeros, zeros),
    }


CHART_SPECS = {
    "chart_dual.json": {
        "title": "Confirmed cases: linear vs log",
        "series_refs": [
            {"region": "Maharashtra", "column": "total_confirmed"},
            {"region": "Kerala", "column": "total_confirmed"},
            {"region": "Karnataka", "column": "total_confirmed"},
        ],
        "x_mode": "calendar_date", "y_scale": "dual", "panel_kind": "line",
        "width": 1200, "height": 420,
    },
    "chart_linear_maharashtra.json": {
        "title": "Maharashtra daily confirmed (linear)",
        "series_refs": [{"region": "Maharashtra",
                         "column": "daily_confirmed"}],
        "x_mode": "calendar_date", "y_scale": "linear", "panel_kind": "line",
        "width": 900, "height": 450,
    },
    "chart_log_maharashtra.json": {
        "title": "Maharashtra daily confirmed (log)",
        "series_refs": [{"region": "Maharashtra",
                         "column": "daily_confirmed"}],
        "x_mode": "calendar_date", "y_scale": "log10", "panel_kind": "line",
        "width": 900, "height": 450,
    },
    "chart_days_since_p0.json": {
        "title": "Two states, days since first case",
        "series_refs": [
            {"region": "Telangana", "column": "total_confirmed"},
            {"region": "Arunachal Pradesh", "column": "total_confirmed"},
        ],
        "x_mode": "days_since_p0", "y_scale": "log10", "panel_kind": "line",
        "width": 900, "height": 450,
    },
    "chart_boxplot.json": {
        "title": "Daily confirmed, distribution",
        "series_refs": [{"region": "Demo", "column": "daily_confirmed"}],
        "x_mode": "calendar_date", "y_scale": "linear",
        "panel_kind": "boxplot", "width": 420, "height": 420,
    },
    "chart_testing.json": {
        "title": "Cases vs testing growth",
        "series_refs": [{"region": "Sampleland",
                         "column": "total_confirmed"}],
        "testing_ref": {"region": "Sampleland Tests",
                        "column": "daily_confirmed"},
        "x_mode": "calendar_date", "y_scale": "linear", "panel_kind": "line",
        "width": 900, "height": 450,
    },
}


def main() -> None:
    fix = ROOT / "fixtures"
    fix.mkdir(exist_ok=True)

    india = make_india()
    (fix / "india_national.csv").write_text(serialize_csv({"India": india}))
    states = make_states()
    (fix / "states.csv").write_text(serialize_csv(states))
    two = make_two_states()
    (fix / "two_states.csv").write_text(serialize_csv(two))
    (fix / "two_states.json").write_text(serialize_json(two))
    (fix / "tiny.csv").write_text(serialize_csv({"Demo": make_tiny()}))
    (fix / "testing_demo.csv").write_text(serialize_csv(make_testing_demo()))
    for name, spec in CHART_SPECS.items():
        (fix / name).write_text(json.dumps(spec, indent=2) + "\n")

    for label, series in [("India", india)] + sorted(states.items()):
        dc = series.daily_confirmed
        q25, q50, q75 = np.percentile(dc, [25, 50, 75])
        print(f"{label:12s} n={len(series)} sum={int(dc.sum())} "
              f"mean={dc.mean():.4f} std={np.std(dc, ddof=1):.4f} "
              f"min={int(dc.min())} p25={q25} p50={q50} p75={q75} "
              f"max={int(dc.max())}")
    print("fixtures written to", fix)


if __name__ == "__main__":
    main()
