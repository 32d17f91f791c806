"""Coordinates, great-circle distance and analytic travel-time estimation."""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6_371_000.0

LAT_MIN, LAT_MAX = -90.0, 90.0
LON_MIN, LON_MAX = -180.0, 180.0


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84-style latitude/longitude pair in decimal degrees."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and LAT_MIN <= self.lat <= LAT_MAX):
            raise ValueError(f"latitude {self.lat!r} outside [{LAT_MIN}, {LAT_MAX}]")
        if not (math.isfinite(self.lon) and LON_MIN <= self.lon <= LON_MAX):
            raise ValueError(f"longitude {self.lon!r} outside [{LON_MIN}, {LON_MAX}]")


@dataclass(frozen=True)
class SpeedModel:
    """Flat drive/walk speeds used when no external router is configured."""

    drive_kmh: float = 30.0
    walk_kmh: float = 5.0

    def __post_init__(self) -> None:
        if self.drive_kmh <= 0:
            raise ValueError(f"drive speed must be > 0, got {self.drive_kmh!r}")
        if self.walk_kmh <= 0:
            raise ValueError(f"walk speed must be > 0, got {self.walk_kmh!r}")


def haversine_m(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points in metres.

    Spherical Earth with mean radius 6,371,000 m; symmetric, non-negative,
    and exactly 0 for identical points.
    """
    if a == b:
        return 0.0
    lat1, lon1 = math.radians(a.lat), math.radians(a.lon)
    lat2, lon2 = math.radians(b.lat), math.radians(b.lon)
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def haversine_km(a: GeoPoint, b: GeoPoint) -> float:
    return haversine_m(a, b) / 1000.0


def travel_minutes(a: GeoPoint, b: GeoPoint, speed_kmh: float) -> float:
    """Straight-line travel time in minutes at a constant speed in km/h."""
    if speed_kmh <= 0:
        raise ValueError(f"speed must be > 0, got {speed_kmh!r}")
    return haversine_m(a, b) / 1000.0 / speed_kmh * 60.0


def centroid(points: list[GeoPoint] | tuple[GeoPoint, ...]) -> GeoPoint:
    """Arithmetic mean of coordinates; adequate at parking-cluster scale."""
    if not points:
        raise ValueError("centroid of no points")
    return GeoPoint(
        lat=sum(p.lat for p in points) / len(points),
        lon=sum(p.lon for p in points) / len(points),
    )
