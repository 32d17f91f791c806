"""Shared fixture builders for the test suite."""

from __future__ import annotations

import math
import random
from datetime import datetime, timedelta, timezone

from moparker.geo import EARTH_RADIUS_M, GeoPoint, SpeedModel, haversine_km
from moparker.ingest import EventStore, ParkingEvent
from moparker.lots import LotDB, ParkingBay, ParkingLot
from moparker.objectives import FareSchedule, FareSegment, ObjectiveVector, Query
from moparker.occupancy import TimeWindow
from moparker.pareto import Candidate
from moparker.routing import AnalyticRouter, RouteLeg

ALL_DAYS = frozenset(range(7))

# Reference trade-off fronts for the two city case studies: (lot_id, travel_min, walk_km, fare, likelihood).
MELBOURNE_FRONT = (
    ("172", 14.0, 0.4, 0.6, 1.0),
    ("4729", 13.0, 0.8, 0.3, 1.0),
    ("4734", 16.0, 1.0, 0.2, 1.0),
    ("5129", 29.0, 1.9, 0.0, 0.73),
    ("4716", 35.0, 2.1, 0.0, 0.92),
)
RYE_FRONT = (
    ("001", 7.0, 0.5, 0.3, 1.0),
    ("037", 15.0, 0.9, 0.1, 1.0),
    ("068", 8.0, 0.6, 0.2, 0.97),
    ("107", 4.0, 0.3, 3.6, 1.0),
    ("003", 6.0, 0.5, 2.3, 1.0),
    ("109", 7.0, 0.3, 0.8, 1.0),
    ("110", 7.0, 0.4, 0.5, 1.0),
)

ARRIVE = datetime(2020, 1, 11, 14, 0, tzinfo=timezone.utc)


def candidates_from_rows(rows) -> list[Candidate]:
    return [
        Candidate(lot_id, ObjectiveVector(t, w, f, l)) for lot_id, t, w, f, l in rows
    ]


def random_candidates(rng: random.Random, n: int, ndigits: int | None = None) -> list[Candidate]:
    out = []
    for i in range(n):
        t = rng.uniform(0, 60)
        w = rng.uniform(0, 3)
        f = rng.uniform(0, 8)
        l = rng.uniform(0, 1)
        if ndigits is not None:
            t, w, f, l = (round(x, ndigits) for x in (t, w, f, l))
        out.append(Candidate(f"lot-{i:04d}", ObjectiveVector(t, w, f, l)))
    return out


def point_north_of(base: GeoPoint, meters: float) -> GeoPoint:
    """Point due north at an exact great-circle distance."""
    return GeoPoint(base.lat + math.degrees(meters / EARTH_RADIUS_M), base.lon)


def point_south_of(base: GeoPoint, meters: float) -> GeoPoint:
    return GeoPoint(base.lat - math.degrees(meters / EARTH_RADIUS_M), base.lon)


def point_east_of(base: GeoPoint, meters: float) -> GeoPoint:
    scale = math.cos(math.radians(base.lat))
    return GeoPoint(base.lat, base.lon + math.degrees(meters / (EARTH_RADIUS_M * scale)))


def validate_feature_collection(doc: dict) -> None:
    """Minimal GeoJSON FeatureCollection grammar check."""
    assert doc["type"] == "FeatureCollection"
    assert isinstance(doc["features"], list)
    for feature in doc["features"]:
        assert feature["type"] == "Feature"
        geometry = feature["geometry"]
        assert geometry["type"] in {"Point", "LineString"}
        coords = geometry["coordinates"]
        if geometry["type"] == "Point":
            assert len(coords) == 2
            assert all(isinstance(c, (int, float)) for c in coords)
        else:
            assert len(coords) >= 2
            for pair in coords:
                assert len(pair) == 2
                assert all(isinstance(c, (int, float)) for c in pair)
        assert isinstance(feature.get("properties"), dict)


class ScriptedRouter:
    """Router stub with per-destination drive minutes; walk legs are analytic.

    Lets a fixture pin total travel times that straight-line geometry cannot
    produce (the reference travel times imply a road-network router).
    """

    capability = "external"

    def __init__(self, drive_minutes: dict[GeoPoint, float], walk_kmh: float = 5.0):
        self.drive_minutes = drive_minutes
        self.analytic = AnalyticRouter(SpeedModel(walk_kmh=walk_kmh))

    def drive(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        return RouteLeg(
            mode="drive",
            points=(origin, dest),
            minutes=self.drive_minutes[dest],
            distance_km=haversine_km(origin, dest),
        )

    def walk(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        return self.analytic.walk(origin, dest)


class FailingRouter:
    """External router that always fails; exercises degradation paths."""

    capability = "external"

    def drive(self, origin, dest):
        from moparker.errors import RoutingError

        raise RoutingError("drive", "simulated outage")

    def walk(self, origin, dest):
        from moparker.errors import RoutingError

        raise RoutingError("walk", "simulated outage")


def build_case_study_fixture(rows, arrive: datetime = ARRIVE, tau: float = 30.0):
    """A dataset whose engine-computed vectors reproduce the case-study rows.

    Lot centroids sit at the exact walk distance from the destination; a
    scripted router supplies the drive minutes; fares come out of flat
    hourly rates over a stay of ``tau`` minutes; events occupy each lot's
    single bay for the exact fraction behind its likelihood.

    Returns (query, lot_db, event_store, schedules, router).
    """
    destination = GeoPoint(-37.8102, 144.9566)
    source = point_east_of(destination, 3000.0)
    window = TimeWindow(arrive, tau)

    lots = []
    events = []
    schedules = {"free": FareSchedule(schedule_id="free")}
    drive_minutes: dict[GeoPoint, float] = {}

    seen_walks: dict[float, int] = {}
    for lot_id, t, w, f, l in rows:
        # Repeated walk distances alternate north/south so centroids stay
        # distinct while keeping the exact great-circle distance.
        occurrence = seen_walks.get(w, 0)
        seen_walks[w] = occurrence + 1
        place = point_north_of if occurrence % 2 == 0 else point_south_of
        centroid = place(destination, w * 1000.0)
        walk_min = haversine_km(centroid, destination) / 5.0 * 60.0
        drive_minutes[centroid] = max(0.0, t - walk_min)
        if f > 0:
            schedule_id = f"rate-{lot_id}"
            schedules[schedule_id] = FareSchedule(
                schedule_id=schedule_id,
                segments=(
                    FareSegment(
                        days=ALL_DAYS,
                        start=datetime.min.time(),
                        end=datetime.min.time(),
                        rate_per_hour=f * 60.0 / tau,
                    ),
                ),
            )
        else:
            schedule_id = "free"
        bay = ParkingBay(bay_id=f"bay-{lot_id}", location=centroid, restriction="1P")
        lots.append(
            ParkingLot(
                lot_id=lot_id,
                bays=(bay,),
                centroid=centroid,
                restriction="1P",
                fare_schedule_id=schedule_id,
            )
        )
        if l < 1.0:
            occupied_minutes = (1.0 - l) * tau
            events.append(
                ParkingEvent(
                    bay_id=bay.bay_id,
                    location=centroid,
                    arrival=arrive,
                    departure=arrive + timedelta(minutes=occupied_minutes),
                    restriction="1P",
                )
            )

    query = Query(
        source=source,
        destination=destination,
        arrival_window=window,
        duration_minutes=tau,
        likelihood_threshold=0.7,
        epsilon=0.0,
        top_k=len(rows),
    )
    router = ScriptedRouter(drive_minutes)
    return query, LotDB(lots), EventStore(events), schedules, router
