"""Route-leg construction: pluggable router with an analytic default.

The analytic router draws straight two-point legs and times them with a flat
speed model; an external road-network client can implement the same protocol
and is wrapped with a fallback so recommendations degrade instead of failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

from .errors import RoutingError
from .geo import GeoPoint, SpeedModel, haversine_km, travel_minutes


@dataclass(frozen=True)
class RouteLeg:
    """One leg of a journey as a polyline plus its travel time."""

    mode: str  # "drive" | "walk"
    points: tuple[GeoPoint, ...]
    minutes: float
    distance_km: float

    def __post_init__(self) -> None:
        if len(self.points) < 2:
            raise ValueError("a leg needs at least start and end points")
        if self.minutes < 0 or self.distance_km < 0:
            raise ValueError("leg time and distance must be non-negative")


@runtime_checkable
class Router(Protocol):
    """Produces drive and walk legs; implementations either return a leg or
    raise :class:`RoutingError` naming the failing leg."""

    capability: str  # "analytic" | "external"

    def drive(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg: ...

    def walk(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg: ...


class AnalyticRouter:
    """Straight-line legs timed by a flat speed model; never fails."""

    capability = "analytic"

    def __init__(self, speeds: SpeedModel | None = None):
        self.speeds = speeds or SpeedModel()

    def drive(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        return self._leg("drive", origin, dest, self.speeds.drive_kmh)

    def walk(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        return self._leg("walk", origin, dest, self.speeds.walk_kmh)

    def _leg(self, mode: str, origin: GeoPoint, dest: GeoPoint, speed: float) -> RouteLeg:
        return RouteLeg(
            mode=mode,
            points=(origin, dest),
            minutes=travel_minutes(origin, dest, speed),
            distance_km=haversine_km(origin, dest),
        )


class FallbackRouter:
    """Wraps an external router; on failure degrades to the analytic router
    and remembers that the last route was degraded."""

    def __init__(self, primary: Router, speeds: SpeedModel | None = None):
        self.primary = primary
        self.fallback = AnalyticRouter(speeds)
        self.capability = primary.capability
        self.last_degraded = False

    def drive(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        return self._leg("drive", origin, dest)

    def walk(self, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        return self._leg("walk", origin, dest)

    def _leg(self, mode: str, origin: GeoPoint, dest: GeoPoint) -> RouteLeg:
        self.last_degraded = False
        try:
            return getattr(self.primary, mode)(origin, dest)
        except RoutingError:
            self.last_degraded = True
            return getattr(self.fallback, mode)(origin, dest)


def default_router(speeds: SpeedModel | None = None) -> AnalyticRouter:
    return AnalyticRouter(speeds)
