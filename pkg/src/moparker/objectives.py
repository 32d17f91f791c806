"""The four-dimensional objective vector computed per (query, lot).

For a query from source ``v_i`` to destination ``v_k`` and a candidate lot
``v_j``, the engine scores:

* travel time  T = drive(v_i, v_j) + walk(v_j, v_k), in minutes (minimize)
* walk distance W = great-circle(v_j, v_k), in km (minimize)
* fare F = schedule rate integrated over the stay, in $ (minimize)
* likelihood L = availability over the arrival window, in [0, 1] (maximize)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from datetime import time, timedelta
from typing import Mapping

from .errors import ConfigurationError
from .geo import GeoPoint, haversine_km
from .lots import ParkingLot
from .occupancy import TimeWindow, likelihood
from .routing import Router, default_router

DAY_NAMES = ("mon", "tue", "wed", "thu", "fri", "sat", "sun")

DEFAULT_LIKELIHOOD_THRESHOLD = 0.7
DEFAULT_EPSILON = 0.01
DEFAULT_TOP_K = 5


@dataclass(frozen=True)
class Query:
    """A driver's request: where from, where to, when, and the trade-off knobs."""

    source: GeoPoint
    destination: GeoPoint
    arrival_window: TimeWindow
    duration_minutes: float
    likelihood_threshold: float = DEFAULT_LIKELIHOOD_THRESHOLD
    epsilon: float = DEFAULT_EPSILON
    top_k: int = DEFAULT_TOP_K

    def __post_init__(self) -> None:
        if not self.duration_minutes > 0:
            raise ValueError(f"parking duration must be > 0, got {self.duration_minutes!r}")
        if not 0.0 <= self.likelihood_threshold <= 1.0:
            raise ValueError(
                f"likelihood threshold must lie in [0, 1], got {self.likelihood_threshold!r}"
            )
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if self.top_k < 0:
            raise ValueError(f"top_k must be >= 0, got {self.top_k!r}")


@dataclass(frozen=True)
class FareSegment:
    """A tariff band: rate applies on given weekdays between start and end."""

    days: frozenset[int]  # 0 = Monday .. 6 = Sunday
    start: time
    end: time  # time(0) means midnight at the end of the day
    rate_per_hour: float

    def __post_init__(self) -> None:
        if self.rate_per_hour < 0:
            raise ValueError("rate must be >= 0")
        if not self.days or not all(0 <= d <= 6 for d in self.days):
            raise ValueError("days must be a non-empty subset of 0..6")

    def _bounds_minutes(self) -> tuple[float, float]:
        lo = self.start.hour * 60 + self.start.minute + self.start.second / 60
        hi = self.end.hour * 60 + self.end.minute + self.end.second / 60
        if hi == 0:
            hi = 1440.0
        if hi <= lo:
            raise ValueError("segment end must be after start")
        return lo, hi


@dataclass(frozen=True)
class FareSchedule:
    """Per-lot tariff: non-overlapping rate segments; gaps are free ($0/h)."""

    schedule_id: str
    segments: tuple[FareSegment, ...] = ()
    cap: float | None = None

    def __post_init__(self) -> None:
        if self.cap is not None and self.cap < 0:
            raise ValueError("cap must be >= 0")
        for day in range(7):
            spans = sorted(
                seg._bounds_minutes() for seg in self.segments if day in seg.days
            )
            for (_, prev_hi), (lo, _) in zip(spans, spans[1:]):
                if lo < prev_hi:
                    raise ValueError(f"overlapping fare segments on {DAY_NAMES[day]}")

    def rate_spans(self, day: int) -> list[tuple[float, float, float]]:
        """(start_minute, end_minute, rate) bands for one weekday, sorted."""
        spans = [
            (*seg._bounds_minutes(), seg.rate_per_hour)
            for seg in self.segments
            if day in seg.days
        ]
        spans.sort()
        return spans


FREE_SCHEDULE = FareSchedule(schedule_id="free")


@dataclass(frozen=True)
class ObjectiveVector:
    travel_min: float
    walk_km: float
    fare: float
    likelihood: float

    def __post_init__(self) -> None:
        for name in ("travel_min", "walk_km", "fare"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")
        if not (math.isfinite(self.likelihood) and 0.0 <= self.likelihood <= 1.0):
            raise ValueError(f"likelihood must lie in [0, 1], got {self.likelihood!r}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.travel_min, self.walk_km, self.fare, self.likelihood)


def total_travel_time(query: Query, lot: ParkingLot, router: Router | None = None) -> float:
    """Drive leg source->lot plus walk leg lot->destination, in minutes."""
    router = router or default_router()
    drive = router.drive(query.source, lot.centroid)
    walk = router.walk(lot.centroid, query.destination)
    return drive.minutes + walk.minutes


def walk_distance(query: Query, lot: ParkingLot) -> float:
    """Great-circle distance lot centroid -> destination, in km."""
    return haversine_km(lot.centroid, query.destination)


def fare(query: Query, lot: ParkingLot, schedules: Mapping[str, FareSchedule]) -> float:
    """Fare in $ for parking at the lot over the stay.

    The stay starts at the arrival-window start and lasts the query's parking
    duration; the schedule rate is integrated pro rata over that span (gaps in
    the schedule are free) and the optional daily cap is applied to the total.
    Times are read off the wall clock of the arrival timestamp as given.
    """
    try:
        schedule = schedules[lot.fare_schedule_id]
    except KeyError:
        raise ConfigurationError(
            f"lot {lot.lot_id!r} references unknown fare schedule "
            f"{lot.fare_schedule_id!r}"
        ) from None

    start = query.arrival_window.start
    remaining = query.duration_minutes
    total = 0.0
    cursor = start
    while remaining > 1e-9:
        day_start = cursor.replace(hour=0, minute=0, second=0, microsecond=0)
        minute_of_day = (cursor - day_start).total_seconds() / 60.0
        chunk = min(remaining, 1440.0 - minute_of_day)
        lo, hi = minute_of_day, minute_of_day + chunk
        for span_lo, span_hi, rate in schedule.rate_spans(cursor.weekday()):
            overlap = min(hi, span_hi) - max(lo, span_lo)
            if overlap > 0:
                total += rate * overlap / 60.0
        cursor = day_start + timedelta(days=1)
        remaining -= chunk
    if schedule.cap is not None:
        total = min(total, schedule.cap)
    return total


def objective_vector(
    query: Query,
    lot: ParkingLot,
    events,
    schedules: Mapping[str, FareSchedule],
    router: Router | None = None,
) -> ObjectiveVector:
    """Assemble (T, W, F, L) for one candidate lot."""
    return ObjectiveVector(
        travel_min=total_travel_time(query, lot, router),
        walk_km=walk_distance(query, lot),
        fare=fare(query, lot, schedules),
        likelihood=likelihood(lot, events, query.arrival_window),
    )


def parse_fare_schedules(payload: Mapping) -> dict[str, FareSchedule]:
    """Build schedules from the JSON document form keyed by schedule_id."""
    schedules = {}
    for schedule_id, spec in payload.items():
        segments = []
        for seg in spec.get("segments", ()):
            days = frozenset(DAY_NAMES.index(d.lower()) for d in seg["days"])
            segments.append(
                FareSegment(
                    days=days,
                    start=_parse_clock(seg["start"]),
                    end=_parse_clock(seg["end"]),
                    rate_per_hour=float(seg["rate_per_hour"]),
                )
            )
        schedules[schedule_id] = FareSchedule(
            schedule_id=schedule_id,
            segments=tuple(segments),
            cap=spec.get("cap"),
        )
    return schedules


def _parse_clock(text: str) -> time:
    if text == "24:00":
        return time(0)
    hours, minutes = text.split(":")
    return time(int(hours), int(minutes))


def load_fare_schedules(path: str) -> dict[str, FareSchedule]:
    import json

    with open(path, encoding="utf-8") as fh:
        return parse_fare_schedules(json.load(fh))
