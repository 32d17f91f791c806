import io
import random
from datetime import datetime, timedelta, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moparker.errors import SchemaError
from moparker.geo import GeoPoint
from moparker.ingest import (
    EventStore,
    ParkingEvent,
    parse_events,
    query_events,
    serialize_events,
    store_events,
)
from moparker.occupancy import TimeWindow

from oracles import linear_scan_events

HEADER = "bay_id,lat,lon,arrival,departure,restriction"


def _csv(*rows: str) -> io.StringIO:
    return io.StringIO("\n".join([HEADER, *rows]) + "\n")


def _event(bay="B1", start="2020-01-11T09:00:00", minutes=20.0, restriction="1P"):
    arrival = datetime.fromisoformat(start).replace(tzinfo=timezone.utc)
    return ParkingEvent(
        bay_id=bay,
        location=GeoPoint(-37.81, 144.96),
        arrival=arrival,
        departure=arrival + timedelta(minutes=minutes),
        restriction=restriction,
    )


class TestParkingEvent:
    def test_departure_before_arrival_rejected(self):
        t = datetime(2020, 1, 1, tzinfo=timezone.utc)
        with pytest.raises(ValueError, match="negative duration"):
            ParkingEvent("B1", GeoPoint(0, 0), t, t - timedelta(minutes=1), "1P")

    def test_zero_duration_accepted(self):
        t = datetime(2020, 1, 1, tzinfo=timezone.utc)
        event = ParkingEvent("B1", GeoPoint(0, 0), t, t, "1P")
        assert event.duration == timedelta(0)

    def test_naive_timestamps_rejected(self):
        t = datetime(2020, 1, 1)
        with pytest.raises(ValueError, match="timezone-aware"):
            ParkingEvent("B1", GeoPoint(0, 0), t, t, "1P")


class TestParseEvents:
    def test_no_data_rows(self):
        events, report = parse_events(_csv())
        assert events == []
        assert (report.accepted, report.rejected) == (0, 0)

    def test_accepts_valid_row(self):
        events, report = parse_events(
            _csv("B1,-37.81,144.96,2017-02-01T09:00:00,2017-02-01T09:30:00,1P")
        )
        assert report.accepted == 1 and report.rejected == 0
        assert events[0].bay_id == "B1"
        assert events[0].arrival.tzinfo is not None

    def test_negative_duration_row_rejected_with_reason(self):
        _, report = parse_events(
            _csv("B1,-37.81,144.96,2017-02-01T09:30:00,2017-02-01T09:00:00,1P")
        )
        assert report.rejected == 1
        assert report.reject_reasons[0][1] == "negative duration"

    def test_ten_row_fixture_with_two_malformed(self):
        # Hand-built: rows 5 and 9 are bad (bad timestamp, lat out of range).
        rows = [
            "B1,-37.8100,144.9600,2017-02-01T08:00:00,2017-02-01T08:10:00,1P",
            "B2,-37.8101,144.9601,2017-02-01T08:05:00,2017-02-01T08:20:00,1P",
            "B3,-37.8102,144.9602,2017-02-01T08:10:00,2017-02-01T08:15:00,2P",
            "B4,-37.8103,144.9603,2017-02-01T08:15:00,2017-02-01T08:45:00,1P",
            "B5,-37.8104,144.9604,not-a-time,2017-02-01T09:00:00,1P",
            "B6,-37.8105,144.9605,2017-02-01T08:20:00,2017-02-01T08:21:00,LZ",
            "B7,-37.8106,144.9606,2017-02-01T08:25:00,2017-02-01T08:55:00,1P",
            "B8,-37.8107,144.9607,2017-02-01T08:30:00,2017-02-01T08:50:00,2P",
            "B9,95.0,144.9608,2017-02-01T08:35:00,2017-02-01T08:40:00,1P",
            "B10,-37.8109,144.9609,2017-02-01T08:40:00,2017-02-01T09:10:00,1P",
        ]
        events, report = parse_events(_csv(*rows))
        assert report.accepted == 8
        assert report.rejected == 2
        assert len(report.reject_reasons) == 2
        assert len(events) == 8
        assert report.accepted + report.rejected == len(rows)

    def test_missing_field_rejected(self):
        _, report = parse_events(_csv("B1,,144.96,2017-02-01T09:00:00,2017-02-01T09:30:00,1P"))
        assert report.rejected == 1
        assert "missing field" in report.reject_reasons[0][1]

    def test_header_mismatch_names_column(self):
        stream = io.StringIO("bay_id,lat,lon,arrival,restriction\n")
        with pytest.raises(SchemaError, match="departure"):
            parse_events(stream)

    def test_local_times_converted_to_utc(self):
        events, _ = parse_events(
            _csv("B1,-37.81,144.96,2017-02-01T09:00:00,2017-02-01T09:30:00,1P"),
            tz="Australia/Melbourne",
        )
        # Melbourne is UTC+11 in February (DST).
        assert events[0].arrival == datetime(2017, 1, 31, 22, 0, tzinfo=timezone.utc)

    def test_zulu_suffix_accepted(self):
        events, report = parse_events(
            _csv("B1,-37.81,144.96,2017-02-01T09:00:00Z,2017-02-01T09:30:00Z,1P")
        )
        assert report.accepted == 1
        assert events[0].arrival.tzinfo is not None

    def test_round_trip_is_stable(self):
        rows = [
            "B2,-37.8101,144.9601,2017-02-01T08:05:00,2017-02-01T08:20:00,1P",
            "B1,-37.8100,144.9600,2017-02-01T08:00:00+11:00,2017-02-01T08:10:00+11:00,2P",
        ]
        events, _ = parse_events(_csv(*rows), tz="Australia/Melbourne")
        text = serialize_events(events)
        reparsed, report = parse_events(io.StringIO(text))
        assert report.rejected == 0
        assert sorted(reparsed, key=lambda e: e.bay_id) == sorted(events, key=lambda e: e.bay_id)
        assert serialize_events(reparsed) == text


class TestEventStore:
    def test_query_empty_store(self):
        store = store_events([])
        window = TimeWindow(datetime(2020, 1, 1, tzinfo=timezone.utc), 30)
        assert query_events(store, "B1", window) == []

    def test_unknown_bay_is_empty_not_error(self):
        store = store_events([_event()])
        window = TimeWindow(datetime(2020, 1, 11, 9, 0, tzinfo=timezone.utc), 30)
        assert query_events(store, "nope", window) == []

    def test_overlapping_window_returns_event(self):
        # Event [09:00, 09:20) vs window [09:10, 09:40).
        store = store_events([_event(start="2020-01-11T09:00:00", minutes=20)])
        window = TimeWindow(datetime(2020, 1, 11, 9, 10, tzinfo=timezone.utc), 30)
        assert len(query_events(store, "B1", window)) == 1

    def test_window_covering_three_of_five(self):
        events = [
            _event(start="2020-01-11T08:00:00", minutes=10),  # before
            _event(start="2020-01-11T09:05:00", minutes=10),  # inside
            _event(start="2020-01-11T08:55:00", minutes=10),  # straddles start
            _event(start="2020-01-11T09:25:00", minutes=10),  # straddles end
            _event(start="2020-01-11T09:30:00", minutes=10),  # at end: excluded
        ]
        store = store_events(events)
        window = TimeWindow(datetime(2020, 1, 11, 9, 0, tzinfo=timezone.utc), 30)
        got = query_events(store, "B1", window)
        expected = linear_scan_events(events, "B1", window.start, window.end)
        assert got == expected
        assert len(got) == 3
        assert got == sorted(got, key=lambda e: e.arrival)

    @given(st.data())
    @settings(max_examples=200, deadline=None)
    def test_query_equals_linear_scan(self, data):
        rng_rows = data.draw(
            st.lists(
                st.tuples(
                    st.sampled_from(["A", "B", "C"]),
                    st.integers(min_value=0, max_value=600),
                    st.integers(min_value=0, max_value=120),
                ),
                max_size=30,
            )
        )
        base = datetime(2020, 1, 11, tzinfo=timezone.utc)
        events = [
            ParkingEvent(
                bay_id=bay,
                location=GeoPoint(0, 0),
                arrival=base + timedelta(minutes=start),
                departure=base + timedelta(minutes=start + length),
                restriction="1P",
            )
            for bay, start, length in rng_rows
        ]
        store = store_events(events)
        start_min = data.draw(st.integers(min_value=0, max_value=700))
        tau = data.draw(st.integers(min_value=1, max_value=200))
        window = TimeWindow(base + timedelta(minutes=start_min), tau)
        for bay in ("A", "B", "C"):
            assert query_events(store, bay, window) == linear_scan_events(
                events, bay, window.start, window.end
            )

    def test_store_iteration_and_len(self):
        events = [_event(bay="B2"), _event(bay="B1"), _event(bay="B1", start="2020-01-11T10:00:00")]
        store = store_events(events)
        assert len(store) == 3
        assert store.bay_ids == ["B1", "B2"]
        assert len(list(store)) == 3


def test_random_store_matches_scan_oracle():
    rng = random.Random(42)
    base = datetime(2020, 1, 11, tzinfo=timezone.utc)
    events = []
    for _ in range(200):
        start = rng.randint(0, 2000)
        events.append(
            ParkingEvent(
                bay_id=f"B{rng.randint(1, 12)}",
                location=GeoPoint(0, 0),
                arrival=base + timedelta(minutes=start),
                departure=base + timedelta(minutes=start + rng.randint(0, 180)),
                restriction="1P",
            )
        )
    store = EventStore(events)
    for _ in range(50):
        window = TimeWindow(base + timedelta(minutes=rng.randint(0, 2200)), rng.randint(1, 240))
        bay = f"B{rng.randint(1, 12)}"
        assert query_events(store, bay, window) == linear_scan_events(
            events, bay, window.start, window.end
        )
