"""Case time-series ingestion, first-case alignment, descriptive statistics.

Input formats: a long CSV with header ``date,region,daily_confirmed,
daily_recovered,daily_deceased`` or its JSON mirror ``{region: [{date, dc,
dr, dd}, ...]}``.  Cumulative columns are always derived from the daily
columns, and missing dates inside a series are an error, never interpolated.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import json
from dataclasses import dataclass, fields

import numpy as np

from .errors import (
    ConsistencyError,
    InsufficientDataError,
    InvalidCountError,
    InvalidSeriesError,
    NoCasesError,
    ParseError,
)

CSV_HEADER = "date,region,daily_confirmed,daily_recovered,daily_deceased"
DAILY_COLUMNS = ("daily_confirmed", "daily_recovered", "daily_deceased")
TOTAL_COLUMNS = ("total_confirmed", "total_recovered", "total_deceased")
# Column order of the summary table export.
TABLE_COLUMNS = ("daily_confirmed", "total_confirmed", "daily_recovered",
                 "total_recovered", "daily_deceased", "total_deceased")
STAT_ROWS = ("Count", "Mean", "Std", "Min", "P25", "P50", "P75", "Max")

_JSON_KEYS = {"daily_confirmed": "dc", "daily_recovered": "dr",
              "daily_deceased": "dd"}


def derive_cumulative(daily) -> np.ndarray:
    """Running sum of a daily count sequence."""
    arr = np.asarray(daily, dtype=np.int64)
    if arr.size and arr.min() < 0:
        raise InvalidCountError(f"negative count {arr.min()} in daily series")
    return np.cumsum(arr)


@dataclass(frozen=True, eq=False)
class RegionSeries:
    """Dated daily and cumulative case counts for one region."""

    region: str
    dates: tuple
    daily_confirmed: np.ndarray
    daily_recovered: np.ndarray
    daily_deceased: np.ndarray
    total_confirmed: np.ndarray
    total_recovered: np.ndarray
    total_deceased: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        for name in DAILY_COLUMNS + TOTAL_COLUMNS:
            object.__setattr__(self, name,
                               np.asarray(getattr(self, name), dtype=np.int64))
        self.validate()

    @classmethod
    def from_daily(cls, region, dates, daily_confirmed, daily_recovered,
                   daily_deceased) -> "RegionSeries":
        return cls(
            region=region,
            dates=tuple(dates),
            daily_confirmed=daily_confirmed,
            daily_recovered=daily_recovered,
            daily_deceased=daily_deceased,
            total_confirmed=derive_cumulative(daily_confirmed),
            total_recovered=derive_cumulative(daily_recovered),
            total_deceased=derive_cumulative(daily_deceased),
        )

    def validate(self) -> None:
        n = len(self.dates)
        for name in DAILY_COLUMNS + TOTAL_COLUMNS:
            if getattr(self, name).shape[0] != n:
                raise ConsistencyError(
                    f"{self.region}: column {name} has length "
                    f"{getattr(self, name).shape[0]}, expected {n}"
                )
        for k in range(1, n):
            gap = (self.dates[k] - self.dates[k - 1]).days
            if gap != 1:
                raise ConsistencyError(
                    f"{self.region}: dates must be consecutive, found "
                    f"{self.dates[k - 1].isoformat()} -> "
                    f"{self.dates[k].isoformat()}"
                )
        for daily_name, total_name in zip(DAILY_COLUMNS, TOTAL_COLUMNS):
            daily = getattr(self, daily_name)
            total = getattr(self, total_name)
            if daily.size and daily.min() < 0:
                raise ConsistencyError(
                    f"{self.region}: negative value in {daily_name}"
                )
            expected = np.cumsum(daily)
            mismatch = np.nonzero(expected != total)[0]
            if mismatch.size:
                k = int(mismatch[0])
                raise ConsistencyError(
                    f"{self.region} {self.dates[k].isoformat()}: {total_name} "
                    f"is {total[k]}, running sum of {daily_name} gives "
                    f"{expected[k]}"
                )

    def column(self, name: str) -> np.ndarray:
        if name not in DAILY_COLUMNS + TOTAL_COLUMNS:
            raise KeyError(name)
        return getattr(self, name)

    def __len__(self) -> int:
        return len(self.dates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RegionSeries):
            return NotImplemented
        return self.region == other.region and self.dates == other.dates and all(
            np.array_equal(getattr(self, f.name), getattr(other, f.name))
            for f in fields(self) if f.name not in ("region", "dates")
        )


@dataclass(frozen=True, eq=False)
class AlignedSeries:
    """A RegionSeries re-indexed so the first case falls on day 0."""

    region: str
    p0_date: dt.date
    days: np.ndarray
    daily_confirmed: np.ndarray
    daily_recovered: np.ndarray
    daily_deceased: np.ndarray
    total_confirmed: np.ndarray
    total_recovered: np.ndarray
    total_deceased: np.ndarray

    def column(self, name: str) -> np.ndarray:
        if name not in DAILY_COLUMNS + TOTAL_COLUMNS:
            raise KeyError(name)
        return getattr(self, name)

    def __len__(self) -> int:
        return self.days.shape[0]


def align_p0(series: RegionSeries) -> tuple[int, AlignedSeries]:
    """Offset (days from series start to the first case) plus the re-indexed
    series, with the first case at day 0."""
    hit = np.nonzero(series.total_confirmed >= 1)[0]
    if hit.size == 0:
        raise NoCasesError(f"{series.region}: no cases recorded")
    offset = int(hit[0])
    n = len(series) - offset
    return offset, AlignedSeries(
        region=series.region,
        p0_date=series.dates[offset],
        days=np.arange(n, dtype=np.int64),
        **{name: series.column(name)[offset:]
           for name in DAILY_COLUMNS + TOTAL_COLUMNS},
    )


@dataclass(frozen=True)
class SummaryStats:
    """Count, mean, sample std (n-1), min, quartiles, max of one column."""

    count: int
    mean: float
    std: float
    min: float
    p25: float
    p50: float
    p75: float
    max: float


def summary_stats(column) -> SummaryStats:
    """Descriptive statistics; percentiles interpolate linearly between
    closest ranks, std uses the n-1 denominator (0 for a single point)."""
    arr = np.asarray(column, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidSeriesError(f"column must be 1-d, got shape {arr.shape}")
    if arr.size == 0:
        raise InsufficientDataError("cannot summarize an empty sequence")
    if not np.all(np.isfinite(arr)):
        raise InvalidSeriesError("column contains non-finite values")
    p25, p50, p75 = np.percentile(arr, [25, 50, 75])
    std = float(np.std(arr, ddof=1)) if arr.size > 1 else 0.0
    return SummaryStats(
        count=int(arr.size), mean=float(np.mean(arr)), std=std,
        min=float(arr.min()), p25=float(p25), p50=float(p50), p75=float(p75),
        max=float(arr.max()),
    )


def _parse_count(text: str, where: str):
    text = text.strip()
    if text == "":
        return None
    try:
        value = int(text)
    except ValueError:
        raise ParseError(f"{where}: expected an integer count, got {text!r}")
    if value < 0:
        raise ParseError(f"{where}: negative count {value}")
    return value


def _parse_date(text: str, where: str) -> dt.date:
    try:
        return dt.date.fromisoformat(text.strip())
    except ValueError:
        raise ParseError(f"{where}: expected an ISO-8601 date, got {text!r}")


class _RegionAccumulator:
    """Collects rows for one region, defaulting leading missing counts to 0."""

    def __init__(self, region: str):
        self.region = region
        self.dates: list[dt.date] = []
        self.columns: dict[str, list[int]] = {c: [] for c in DAILY_COLUMNS}
        self._seen: dict[str, bool] = {c: False for c in DAILY_COLUMNS}

    def add(self, date: dt.date, values: dict, where: str) -> None:
        self.dates.append(date)
        for name in DAILY_COLUMNS:
            value = values[name]
            if value is None:
                if self._seen[name]:
                    raise ParseError(
                        f"{where}: missing {name} after earlier values"
                    )
                value = 0
            else:
                self._seen[name] = True
            self.columns[name].append(value)

    def build(self) -> RegionSeries:
        return RegionSeries.from_daily(self.region, self.dates,
                                       **self.columns)


def _as_text(document) -> str:
    if isinstance(document, bytes):
        try:
            return document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"document is not valid UTF-8: {exc}")
    return document


def parse_timeseries(document) -> dict[str, RegionSeries]:
    """Parse a CSV or JSON case-series document into one series per region.

    The result is keyed and ordered by region name.
    """
    text = _as_text(document)
    if not text.strip():
        raise ParseError("document is empty")
    if text.lstrip()[0] == "{":
        return _parse_json(text)
    return _parse_csv(text)


def _parse_csv(text: str) -> dict[str, RegionSeries]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("document is empty")
    if [h.strip() for h in header] != CSV_HEADER.split(","):
        raise ParseError(
            f"line 1: header must be exactly {CSV_HEADER!r}, got "
            f"{','.join(header)!r}"
        )
    regions: dict[str, _RegionAccumulator] = {}
    for row in reader:
        if not row or (len(row) == 1 and row[0].strip() == ""):
            continue
        where = f"line {reader.line_num}"
        if len(row) != 5:
            raise ParseError(f"{where}: expected 5 fields, got {len(row)}")
        date = _parse_date(row[0], where)
        region = row[1].strip()
        if not region:
            raise ParseError(f"{where}: empty region name")
        values = {name: _parse_count(row[2 + k], where)
                  for k, name in enumerate(DAILY_COLUMNS)}
        acc = regions.setdefault(region, _RegionAccumulator(region))
        if acc.dates and date <= acc.dates[-1]:
            raise ParseError(
                f"{where}: dates for {region} must be strictly increasing"
            )
        acc.add(date, values, where)
    if not regions:
        raise ParseError("document has no data rows")
    return {name: regions[name].build() for name in sorted(regions)}


def _parse_json(text: str) -> dict[str, RegionSeries]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: invalid JSON: {exc.msg}")
    if not isinstance(payload, dict) or not payload:
        raise ParseError("JSON document must map region names to row lists")
    regions: dict[str, RegionSeries] = {}
    for region in sorted(payload):
        rows = payload[region]
        if not isinstance(rows, list) or not rows:
            raise ParseError(f"region {region!r}: expected a non-empty list")
        acc = _RegionAccumulator(region)
        for k, row in enumerate(rows):
            where = f"region {region!r} row {k}"
            if not isinstance(row, dict) or "date" not in row:
                raise ParseError(f"{where}: expected an object with a date")
            date = _parse_date(str(row["date"]), where)
            if acc.dates and date <= acc.dates[-1]:
                raise ParseError(f"{where}: dates must be strictly increasing")
            values = {}
            for name in DAILY_COLUMNS:
                raw = row.get(_JSON_KEYS[name])
                if raw is None:
                    values[name] = None
                elif isinstance(raw, int) and not isinstance(raw, bool):
                    if raw < 0:
                        raise ParseError(f"{where}: negative count {raw}")
                    values[name] = raw
                else:
                    raise ParseError(
                        f"{where}: expected an integer count, got {raw!r}"
                    )
            acc.add(date, values, where)
        regions[region] = acc.build()
    return regions


def serialize_csv(collection: dict[str, RegionSeries]) -> str:
    """Inverse of the CSV parser; regions ordered by name, rows by date."""
    lines = [CSV_HEADER]
    for region in sorted(collection):
        series = collection[region]
        for k in range(len(series)):
            lines.append(",".join((
                series.dates[k].isoformat(), series.region,
                str(int(series.daily_confirmed[k])),
                str(int(series.daily_recovered[k])),
                str(int(series.daily_deceased[k])),
            )))
    return "\n".join(lines) + "\n"


def serialize_json(collection: dict[str, RegionSeries]) -> str:
    """Inverse of the JSON parser."""
    payload = {}
    for region in sorted(collection):
        series = collection[region]
        payload[region] = [
            {"date": series.dates[k].isoformat(),
             "dc": int(series.daily_confirmed[k]),
             "dr": int(series.daily_recovered[k]),
             "dd": int(series.daily_deceased[k])}
            for k in range(len(series))
        ]
    return json.dumps(payload, indent=2) + "\n"


def _format_cell(value) -> str:
    value = float(value)
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def summary_table(series: RegionSeries) -> dict[str, SummaryStats]:
    """SummaryStats for each of the six columns, in table order."""
    return {name: summary_stats(series.column(name))
            for name in TABLE_COLUMNS}


def summary_table_csv(series: RegionSeries) -> str:
    """Summary-statistics CSV: one row per statistic, one column per series."""
    table = summary_table(series)
    lines = ["statistic," + ",".join(TABLE_COLUMNS)]
    getters = {"Count": lambda s: s.count, "Mean": lambda s: s.mean,
               "Std": lambda s: s.std, "Min": lambda s: s.min,
               "P25": lambda s: s.p25, "P50": lambda s: s.p50,
               "P75": lambda s: s.p75, "Max": lambda s: s.max}
    for row in STAT_ROWS:
        cells = [_format_cell(getters[row](table[name]))
                 for name in TABLE_COLUMNS]
        lines.append(row + "," + ",".join(cells))
    return "\n".join(lines) + "\n"
