"""Parsing, validation and storage of per-bay parking event logs.

Input is the per-bay CSV schema ``bay_id,lat,lon,arrival,departure,restriction``
with ISO-8601 timestamps. Naive timestamps are interpreted in a caller-supplied
IANA timezone and normalized to UTC; rows that violate the event invariants are
rejected with a per-line reason rather than repaired.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_left
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from typing import IO, Iterable, Iterator
from zoneinfo import ZoneInfo

from .errors import SchemaError
from .geo import GeoPoint

CSV_COLUMNS = ("bay_id", "lat", "lon", "arrival", "departure", "restriction")


@dataclass(frozen=True)
class ParkingEvent:
    """One arrival/departure interval observed at one bay."""

    bay_id: str
    location: GeoPoint
    arrival: datetime
    departure: datetime
    restriction: str

    def __post_init__(self) -> None:
        if not self.bay_id:
            raise ValueError("bay_id must be non-empty")
        if self.arrival.tzinfo is None or self.departure.tzinfo is None:
            raise ValueError("event timestamps must be timezone-aware")
        if self.departure < self.arrival:
            raise ValueError("negative duration")

    @property
    def duration(self) -> timedelta:
        return self.departure - self.arrival


@dataclass
class IngestReport:
    """Outcome of one parse run: row counts plus per-line rejection reasons."""

    accepted: int = 0
    rejected: int = 0
    reject_reasons: list[tuple[int, str]] = field(default_factory=list)


def parse_timestamp(raw: str, tz: ZoneInfo | timezone) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are localized to ``tz``.

    Accepts a trailing ``Z`` (Python 3.10's fromisoformat does not).
    """
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=tz)
    return dt.astimezone(timezone.utc)


def parse_events(
    stream: IO[str] | Iterable[str],
    tz: str = "UTC",
) -> tuple[list[ParkingEvent], IngestReport]:
    """Parse an event CSV into validated events plus an ingest report.

    The header must contain every column of ``CSV_COLUMNS``; a missing column
    raises :class:`SchemaError` naming it. Every non-header row is either
    accepted (all invariants satisfied, timestamps normalized to UTC) or
    rejected with a ``(line_number, reason)`` entry. Line numbers are
    1-based positions in the file, header included.
    """
    zone = ZoneInfo(tz)
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise SchemaError("empty input: missing header row")
    for column in CSV_COLUMNS:
        if column not in reader.fieldnames:
            raise SchemaError(f"missing column {column!r} in header")

    events: list[ParkingEvent] = []
    report = IngestReport()
    for row in reader:
        line = reader.line_num
        try:
            events.append(_parse_row(row, zone))
            report.accepted += 1
        except ValueError as exc:
            report.rejected += 1
            report.reject_reasons.append((line, str(exc)))
    return events, report


def _parse_row(row: dict[str, str | None], zone: ZoneInfo) -> ParkingEvent:
    for column in CSV_COLUMNS:
        value = row.get(column)
        if value is None or value.strip() == "":
            raise ValueError(f"missing field {column!r}")
    try:
        lat = float(row["lat"])  # type: ignore[arg-type]
        lon = float(row["lon"])  # type: ignore[arg-type]
    except ValueError:
        raise ValueError("malformed coordinate") from None
    location = GeoPoint(lat, lon)  # out-of-range -> ValueError
    try:
        arrival = parse_timestamp(row["arrival"], zone)  # type: ignore[arg-type]
        departure = parse_timestamp(row["departure"], zone)  # type: ignore[arg-type]
    except ValueError:
        raise ValueError("bad timestamp") from None
    return ParkingEvent(
        bay_id=row["bay_id"].strip(),  # type: ignore[union-attr]
        location=location,
        arrival=arrival,
        departure=departure,
        restriction=row["restriction"].strip(),  # type: ignore[union-attr]
    )


def serialize_events(events: Iterable[ParkingEvent]) -> str:
    """Render events back to the canonical CSV form (UTC ISO-8601, sorted)."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(CSV_COLUMNS)
    ordered = sorted(events, key=lambda e: (e.arrival, e.bay_id, e.departure))
    for e in ordered:
        writer.writerow(
            [
                e.bay_id,
                repr(e.location.lat),
                repr(e.location.lon),
                e.arrival.isoformat(),
                e.departure.isoformat(),
                e.restriction,
            ]
        )
    return out.getvalue()


class EventStore:
    """Immutable snapshot of parsed events, indexed per bay for window queries."""

    def __init__(self, events: Iterable[ParkingEvent]):
        by_bay: dict[str, list[ParkingEvent]] = {}
        for event in events:
            by_bay.setdefault(event.bay_id, []).append(event)
        for bay_events in by_bay.values():
            bay_events.sort(key=lambda e: (e.arrival, e.departure))
        self._by_bay = by_bay
        self._count = sum(len(v) for v in by_bay.values())

    def __len__(self) -> int:
        return self._count

    def __iter__(self) -> Iterator[ParkingEvent]:
        for bay_id in sorted(self._by_bay):
            yield from self._by_bay[bay_id]

    @property
    def bay_ids(self) -> list[str]:
        return sorted(self._by_bay)

    def events_for_bay(self, bay_id: str) -> list[ParkingEvent]:
        return list(self._by_bay.get(bay_id, ()))

    def query(self, bay_id: str, start: datetime, end: datetime) -> list[ParkingEvent]:
        """Events at ``bay_id`` whose ``[arrival, departure)`` interval
        intersects ``[start, end)``, sorted by arrival.

        Zero-duration events count as points: included iff start <= t < end.
        Unknown bays yield an empty list.
        """
        bay_events = self._by_bay.get(bay_id)
        if not bay_events:
            return []
        # Events are arrival-sorted; everything from the first index with
        # arrival >= start could still have started earlier and overlap, so
        # scan the whole prefix but stop once arrivals pass the window end.
        arrivals = [e.arrival for e in bay_events]
        stop = bisect_left(arrivals, end)
        return [e for e in bay_events[:stop] if _intersects(e, start, end)]


def _intersects(event: ParkingEvent, start: datetime, end: datetime) -> bool:
    if event.arrival == event.departure:
        return start <= event.arrival < end
    return event.arrival < end and event.departure > start


def store_events(events: Iterable[ParkingEvent]) -> EventStore:
    return EventStore(events)


def query_events(store: EventStore, bay_id: str, window) -> list[ParkingEvent]:
    """Window query against a store; ``window`` provides ``start`` and ``end``."""
    return store.query(bay_id, window.start, window.end)


def load_events(path: str, tz: str = "UTC") -> tuple[list[ParkingEvent], IngestReport]:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_events(fh, tz=tz)


def save_events(events: Iterable[ParkingEvent], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(serialize_events(events))
