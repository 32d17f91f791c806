"""Per-lot occupied time, availability likelihood and baseline forecasting.

The availability likelihood of a lot over a time window is one minus the
average occupied-time fraction of its bays:

    likelihood = 1 - sum_i occupied(i) / (n * tau)

with per-bay occupied time computed as the length of the union of that bay's
event intervals clipped to the window, so overlapping sensor events are never
double-counted and each bay contributes at most ``tau`` minutes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import TYPE_CHECKING, Callable, Iterable

if TYPE_CHECKING:
    from .ingest import ParkingEvent
    from .lots import ParkingLot

SECONDS_PER_MINUTE = 60.0
MINUTES_PER_DAY = 1440.0


@dataclass(frozen=True)
class TimeWindow:
    """A half-open window ``[start, start + minutes)``."""

    start: datetime
    minutes: float

    def __post_init__(self) -> None:
        if not self.minutes > 0:
            raise ValueError(f"window length must be > 0 minutes, got {self.minutes!r}")

    @property
    def end(self) -> datetime:
        return self.start + timedelta(minutes=self.minutes)


@dataclass(frozen=True)
class OccupancySeries:
    """Contiguous equal-width bins of occupancy fraction for one lot."""

    lot_id: str
    start: datetime
    bin_minutes: float
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.bin_minutes <= 0:
            raise ValueError("bin length must be > 0 minutes")
        for v in self.values:
            if not (0.0 <= v <= 1.0):
                raise ValueError(f"occupancy fraction {v!r} outside [0, 1]")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class PredictorEval:
    """Rolling-origin forecast errors at one horizon."""

    mae: float
    rmse: float
    horizon: float


def _events_at_bay(events, bay_id: str, window: TimeWindow) -> Iterable["ParkingEvent"]:
    # EventStore gives an indexed window query; plain iterables are filtered.
    query = getattr(events, "query", None)
    if callable(query):
        return query(bay_id, window.start, window.end)
    return (e for e in events if e.bay_id == bay_id)


def occupied_time(events, bay_id: str, window: TimeWindow) -> float:
    """Minutes of ``window`` covered by the union of the bay's events.

    ``events`` may be an :class:`~moparker.ingest.EventStore` or any iterable
    of events. Result lies in ``[0, window.minutes]``.
    """
    clipped: list[tuple[datetime, datetime]] = []
    for event in _events_at_bay(events, bay_id, window):
        lo = max(event.arrival, window.start)
        hi = min(event.departure, window.end)
        if hi > lo:
            clipped.append((lo, hi))
    if not clipped:
        return 0.0
    clipped.sort()
    total = timedelta(0)
    cur_lo, cur_hi = clipped[0]
    for lo, hi in clipped[1:]:
        if lo <= cur_hi:
            cur_hi = max(cur_hi, hi)
        else:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
    total += cur_hi - cur_lo
    return min(total.total_seconds() / SECONDS_PER_MINUTE, window.minutes)


def likelihood(lot: "ParkingLot", events, window: TimeWindow) -> float:
    """Probability-like availability score in [0, 1] for ``lot`` over ``window``."""
    n = len(lot.bays)
    if n < 1:
        raise ValueError("lot must have at least one bay")
    occupied = sum(occupied_time(events, bay.bay_id, window) for bay in lot.bays)
    return 1.0 - occupied / (n * window.minutes)


def build_series(
    lot: "ParkingLot",
    events,
    bin_minutes: float,
    span: tuple[datetime, datetime],
) -> OccupancySeries:
    """Occupancy-fraction series (1 - likelihood per bin) over ``span``.

    Bins are contiguous from ``span[0]``; a trailing partial bin is dropped.
    """
    start, end = span
    if end <= start:
        raise ValueError("span end must be after start")
    n_bins = int((end - start).total_seconds() / SECONDS_PER_MINUTE // bin_minutes)
    values = []
    for k in range(n_bins):
        window = TimeWindow(start + timedelta(minutes=k * bin_minutes), bin_minutes)
        values.append(1.0 - likelihood(lot, events, window))
    return OccupancySeries(
        lot_id=lot.lot_id, start=start, bin_minutes=bin_minutes, values=tuple(values)
    )


# A forecaster maps (history values, bins-per-day period, target offset in bins
# past the last observed index) to a fraction; built-ins below are the baseline
# realizations behind the predictor plug-point.
Forecaster = Callable[[tuple[float, ...], int, int], float]


def _persistence(values: tuple[float, ...], period: int, steps: int) -> float:
    return values[-1]


def _seasonal_naive(values: tuple[float, ...], period: int, steps: int) -> float:
    target = len(values) - 1 + steps
    source = target - period
    if 0 <= source < len(values):
        return values[source]
    return _persistence(values, period, steps)


def _historical_mean(values: tuple[float, ...], period: int, steps: int) -> float:
    target = len(values) - 1 + steps
    same_tod = [v for i, v in enumerate(values) if (target - i) % period == 0]
    if not same_tod:
        return _persistence(values, period, steps)
    return sum(same_tod) / len(same_tod)


PREDICTORS: dict[str, Forecaster] = {
    "persistence": _persistence,
    "seasonal-naive": _seasonal_naive,
    "historical-mean": _historical_mean,
}


def register_predictor(name: str, forecaster: Forecaster) -> None:
    """Plug in an external forecaster (e.g. a trained model) under ``name``."""
    PREDICTORS[name] = forecaster


def _steps(series_bin: float, horizon: float) -> int:
    steps = horizon / series_bin
    if steps != int(steps) or steps < 1:
        raise ValueError(
            f"horizon {horizon!r} min must be a positive multiple of the "
            f"{series_bin!r}-min bin"
        )
    return int(steps)


def predict(series: OccupancySeries, horizon: float, method: str = "seasonal-naive") -> float:
    """Forecast the occupancy fraction ``horizon`` minutes past the series end."""
    if len(series) == 0:
        raise ValueError("cannot predict from an empty series")
    try:
        forecaster = PREDICTORS[method]
    except KeyError:
        raise ValueError(f"unknown predictor {method!r}; have {sorted(PREDICTORS)}") from None
    steps = _steps(series.bin_minutes, horizon)
    period = max(1, int(MINUTES_PER_DAY // series.bin_minutes))
    raw = forecaster(series.values, period, steps)
    return min(1.0, max(0.0, raw))


def evaluate_predictor(
    series: OccupancySeries, method: str, horizon: float
) -> PredictorEval:
    """Rolling-origin evaluation over the series: forecast each bin from its
    strict prefix and score against the observed value."""
    steps = _steps(series.bin_minutes, horizon)
    period = max(1, int(MINUTES_PER_DAY // series.bin_minutes))
    try:
        forecaster = PREDICTORS[method]
    except KeyError:
        raise ValueError(f"unknown predictor {method!r}; have {sorted(PREDICTORS)}") from None

    # Warm up one period when the series is long enough so seasonal lookups
    # never fall back; otherwise evaluate from the first possible origin.
    warmup = period if len(series) - steps - period >= 2 else 0
    errors = []
    for origin in range(warmup, len(series) - steps):
        history = series.values[: origin + 1]
        forecast = min(1.0, max(0.0, forecaster(history, period, steps)))
        errors.append(forecast - series.values[origin + steps])
    if len(errors) < 2:
        raise ValueError(
            f"need at least 2 evaluation points, got {len(errors)} "
            f"(series length {len(series)}, horizon {horizon} min)"
        )
    mae = sum(abs(e) for e in errors) / len(errors)
    rmse = math.sqrt(sum(e * e for e in errors) / len(errors))
    return PredictorEval(mae=mae, rmse=rmse, horizon=horizon)
