"""Clustering of parking bays into lots and the queryable lot database.

Two bays belong to the same lot when they are linked by a chain of bays in
which consecutive members are within ``d_max`` metres of each other and all
share the same restriction label, i.e. lots are the connected components of
the proximity-and-restriction graph.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .geo import EARTH_RADIUS_M, GeoPoint, centroid, haversine_m
from .ingest import ParkingEvent

DEFAULT_D_MAX_M = 25.0


@dataclass(frozen=True)
class ParkingBay:
    bay_id: str
    location: GeoPoint
    restriction: str

    def __post_init__(self) -> None:
        if not self.bay_id:
            raise ValueError("bay_id must be non-empty")


@dataclass(frozen=True)
class ParkingLot:
    """A cluster of same-restriction bays; the unit of recommendation."""

    lot_id: str
    bays: tuple[ParkingBay, ...]
    centroid: GeoPoint
    restriction: str
    fare_schedule_id: str = "free"

    def __post_init__(self) -> None:
        if not self.bays:
            raise ValueError("lot must contain at least one bay")
        if any(b.restriction != self.restriction for b in self.bays):
            raise ValueError("all bays in a lot must share the restriction label")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _pairwise_within(bays: list[ParkingBay], d_max: float) -> np.ndarray:
    """Boolean matrix of pairs within d_max metres (vectorized haversine)."""
    lat = np.radians(np.array([b.location.lat for b in bays]))
    lon = np.radians(np.array([b.location.lon for b in bays]))
    dlat = lat[:, None] - lat[None, :]
    dlon = lon[:, None] - lon[None, :]
    h = np.sin(dlat / 2) ** 2 + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlon / 2) ** 2
    dist = 2 * EARTH_RADIUS_M * np.arcsin(np.minimum(1.0, np.sqrt(h)))
    return dist <= d_max


def cluster_bays(
    bays: Iterable[ParkingBay],
    d_max: float = DEFAULT_D_MAX_M,
    fare_schedule_id: str = "free",
) -> list[ParkingLot]:
    """Partition bays into lots (connected components under proximity +
    equal restriction).

    Deterministic and permutation-invariant: members are sorted by bay_id,
    each lot takes its smallest bay_id as lot_id, and the result is ordered
    by lot_id. Duplicate bay_ids are rejected.
    """
    if d_max <= 0:
        raise ValueError(f"d_max must be > 0 metres, got {d_max!r}")
    ordered = sorted(bays, key=lambda b: b.bay_id)
    if not ordered:
        return []
    seen: set[str] = set()
    for bay in ordered:
        if bay.bay_id in seen:
            raise ValueError(f"duplicate bay_id {bay.bay_id!r}")
        seen.add(bay.bay_id)

    close = _pairwise_within(ordered, d_max)
    uf = _UnionFind(len(ordered))
    for i in range(len(ordered)):
        for j in np.nonzero(close[i, i + 1 :])[0]:
            k = i + 1 + int(j)
            if ordered[i].restriction == ordered[k].restriction:
                uf.union(i, k)

    groups: dict[int, list[ParkingBay]] = {}
    for idx, bay in enumerate(ordered):
        groups.setdefault(uf.find(idx), []).append(bay)

    lots = []
    for members in groups.values():
        members.sort(key=lambda b: b.bay_id)
        lots.append(
            ParkingLot(
                lot_id=members[0].bay_id,
                bays=tuple(members),
                centroid=centroid([b.location for b in members]),
                restriction=members[0].restriction,
                fare_schedule_id=fare_schedule_id,
            )
        )
    lots.sort(key=lambda lot: lot.lot_id)
    return lots


def bays_from_events(events: Iterable[ParkingEvent]) -> list[ParkingBay]:
    """Distinct bays observed in an event log (first observation wins)."""
    by_id: dict[str, ParkingBay] = {}
    for event in sorted(events, key=lambda e: (e.bay_id, e.arrival)):
        if event.bay_id not in by_id:
            by_id[event.bay_id] = ParkingBay(
                bay_id=event.bay_id,
                location=event.location,
                restriction=event.restriction,
            )
    return [by_id[k] for k in sorted(by_id)]


class LotDB:
    """Immutable, id-ordered collection of lots with radius queries."""

    def __init__(self, lots: Iterable[ParkingLot]):
        ordered = sorted(lots, key=lambda lot: lot.lot_id)
        ids = [lot.lot_id for lot in ordered]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate lot_id in database")
        self._lots = ordered
        self._by_id = {lot.lot_id: lot for lot in ordered}

    def __len__(self) -> int:
        return len(self._lots)

    def __iter__(self):
        return iter(self._lots)

    @property
    def lots(self) -> list[ParkingLot]:
        return list(self._lots)

    def get(self, lot_id: str) -> ParkingLot | None:
        return self._by_id.get(lot_id)

    def nearby(self, point: GeoPoint, radius_m: float) -> list[ParkingLot]:
        """Lots whose centroid is within ``radius_m`` of ``point``,
        distance-ascending with lot_id tie-break."""
        if radius_m < 0 or not math.isfinite(radius_m):
            raise ValueError(f"radius must be finite and >= 0, got {radius_m!r}")
        hits = []
        for lot in self._lots:
            dist = haversine_m(lot.centroid, point)
            if dist <= radius_m:
                hits.append((dist, lot.lot_id, lot))
        hits.sort(key=lambda t: (t[0], t[1]))
        return [lot for _, _, lot in hits]


def lot_database(lots: Iterable[ParkingLot]) -> LotDB:
    return LotDB(lots)


def nearby_lots(db: LotDB, point: GeoPoint, radius_m: float) -> list[ParkingLot]:
    return db.nearby(point, radius_m)


def lots_to_json(db: LotDB | Iterable[ParkingLot]) -> str:
    payload = [
        {
            "lot_id": lot.lot_id,
            "restriction": lot.restriction,
            "fare_schedule_id": lot.fare_schedule_id,
            "centroid": {"lat": lot.centroid.lat, "lon": lot.centroid.lon},
            "bays": [
                {"bay_id": b.bay_id, "lat": b.location.lat, "lon": b.location.lon}
                for b in lot.bays
            ],
        }
        for lot in db
    ]
    return json.dumps(payload, indent=2)


def lots_from_json(text: str) -> LotDB:
    lots = []
    for entry in json.loads(text):
        restriction = entry["restriction"]
        bays = tuple(
            ParkingBay(
                bay_id=b["bay_id"],
                location=GeoPoint(b["lat"], b["lon"]),
                restriction=restriction,
            )
            for b in entry["bays"]
        )
        lots.append(
            ParkingLot(
                lot_id=entry["lot_id"],
                bays=bays,
                centroid=GeoPoint(entry["centroid"]["lat"], entry["centroid"]["lon"]),
                restriction=restriction,
                fare_schedule_id=entry.get("fare_schedule_id", "free"),
            )
        )
    return LotDB(lots)


def save_lots(db: LotDB | Iterable[ParkingLot], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(lots_to_json(db))


def load_lots(path: str) -> LotDB:
    with open(path, encoding="utf-8") as fh:
        return lots_from_json(fh.read())
