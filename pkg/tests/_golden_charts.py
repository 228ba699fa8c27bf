"""Fixed chart inputs behind the golden-file determinism tests."""

import datetime as dt

from epicurve.chart import ChartSpec, SeriesRef
from epicurve.ingest import RegionSeries


def golden_data():
    start = dt.date(2020, 4, 1)
    out = {}
    for name, daily in (("Alpha", [0, 1, 3, 9, 27, 81, 243, 729]),
                        ("Beta", [2, 2, 4, 8, 12, 30, 70, 150])):
        dates = [start + dt.timedelta(days=k) for k in range(len(daily))]
        zeros = [0] * len(daily)
        out[name] = RegionSeries.from_daily(name, dates, daily, zeros, zeros)
    return out


def golden_specs():
    dual = ChartSpec(title="two regions, linear vs log",
                     series_refs=(SeriesRef("Alpha", "total_confirmed"),
                                  SeriesRef("Beta", "total_confirmed")),
                     y_scale="dual", width=960, height=420)
    box = ChartSpec(title="daily confirmed, distribution",
                    series_refs=(SeriesRef("Alpha", "daily_confirmed"),
                                 SeriesRef("Beta", "daily_confirmed")),
                    panel_kind="boxplot", width=420, height=420)
    return {"dual_panel.svg": dual, "boxplot.svg": box}
