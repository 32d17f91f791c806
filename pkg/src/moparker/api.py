"""HTTP service over an immutable data snapshot.

Endpoints:
  POST /v1/recommend                 trade-off recommendations with route legs
  GET  /v1/lots                      lot inventory
  GET  /v1/lots/{id}/likelihood      availability for a window (predictor opt-in)
  GET  /v1/health                    snapshot counts

Ingestion and clustering happen offline via the CLI; the service only reads
the snapshot it loaded at startup. Requests never mutate shared state, so
responses are deterministic for a fixed snapshot. Malformed request bodies
yield 400 with field-level messages; semantically invalid parameter values
yield 422. Crowding distance is +inf for boundary lots, encoded as JSON null.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timezone
from math import isinf

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from .errors import ConfigurationError, RoutingError
from .geo import GeoPoint, SpeedModel
from .ingest import EventStore, load_events
from .lots import LotDB, ParkingLot, load_lots
from .objectives import (
    DEFAULT_EPSILON,
    DEFAULT_LIKELIHOOD_THRESHOLD,
    DEFAULT_TOP_K,
    FareSchedule,
    Query,
    load_fare_schedules,
)
from .occupancy import TimeWindow, build_series, likelihood, predict
from .pareto import recommend
from .routing import AnalyticRouter, RouteLeg, Router


@dataclass(frozen=True)
class RecommendDefaults:
    """Server-side fallbacks for fields a request leaves out."""

    threshold_likelihood: float = DEFAULT_LIKELIHOOD_THRESHOLD
    epsilon: float = DEFAULT_EPSILON
    top_k: int = DEFAULT_TOP_K


@dataclass
class Snapshot:
    """Everything the service reads: lots, events, fares, and the router."""

    lots: LotDB
    events: EventStore
    schedules: dict[str, FareSchedule]
    router: Router = field(default_factory=AnalyticRouter)
    speeds: SpeedModel = field(default_factory=SpeedModel)
    defaults: RecommendDefaults = field(default_factory=RecommendDefaults)

    def __post_init__(self) -> None:
        # Fail at startup, not per request: every lot's schedule must resolve.
        missing = sorted(
            {
                lot.fare_schedule_id
                for lot in self.lots
                if lot.fare_schedule_id not in self.schedules
            }
        )
        if missing:
            raise ConfigurationError(
                f"lots reference unknown fare schedules: {', '.join(missing)}"
            )


@dataclass
class ServiceConfig:
    store_path: str
    lots_path: str
    fares_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    drive_kmh: float = 30.0
    walk_kmh: float = 5.0
    default_threshold_likelihood: float = DEFAULT_LIKELIHOOD_THRESHOLD
    default_epsilon: float = DEFAULT_EPSILON
    default_top_k: int = DEFAULT_TOP_K


def load_snapshot(config: ServiceConfig) -> Snapshot:
    events, _report = load_events(config.store_path)
    speeds = SpeedModel(drive_kmh=config.drive_kmh, walk_kmh=config.walk_kmh)
    return Snapshot(
        lots=load_lots(config.lots_path),
        events=EventStore(events),
        schedules=load_fare_schedules(config.fares_path),
        router=AnalyticRouter(speeds),
        speeds=speeds,
        defaults=RecommendDefaults(
            threshold_likelihood=config.default_threshold_likelihood,
            epsilon=config.default_epsilon,
            top_k=config.default_top_k,
        ),
    )


class CoordinateModel(BaseModel):
    lat: float = Field(ge=-90, le=90)
    lon: float = Field(ge=-180, le=180)

    def to_point(self) -> GeoPoint:
        return GeoPoint(self.lat, self.lon)


class RecommendRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    from_: CoordinateModel = Field(alias="from")
    to: CoordinateModel
    arrive: datetime
    tau_minutes: float = 30.0
    duration_minutes: float = 60.0
    threshold_likelihood: float = DEFAULT_LIKELIHOOD_THRESHOLD
    epsilon: float = DEFAULT_EPSILON
    top_k: int = DEFAULT_TOP_K


def _semantic_errors(body: RecommendRequest) -> list[dict[str, str]]:
    errors = []
    if body.tau_minutes <= 0:
        errors.append({"field": "tau_minutes", "message": "must be > 0"})
    if body.duration_minutes <= 0:
        errors.append({"field": "duration_minutes", "message": "must be > 0"})
    if not 0.0 <= body.threshold_likelihood <= 1.0:
        errors.append({"field": "threshold_likelihood", "message": "must lie in [0, 1]"})
    if body.epsilon < 0:
        errors.append({"field": "epsilon", "message": "must be >= 0"})
    if body.top_k < 0:
        errors.append({"field": "top_k", "message": "must be >= 0"})
    return errors


def _aware(dt: datetime) -> datetime:
    return dt if dt.tzinfo is not None else dt.replace(tzinfo=timezone.utc)


def build_route(
    source: GeoPoint,
    lot: ParkingLot,
    destination: GeoPoint,
    router: Router,
    speeds: SpeedModel | None = None,
) -> tuple[RouteLeg, RouteLeg, bool]:
    """Drive leg source->lot plus walk leg lot->destination.

    A router failure degrades the affected leg to the analytic router and
    reports it via the returned flag instead of failing the request.
    """
    analytic = AnalyticRouter(speeds)
    degraded = False
    try:
        drive = router.drive(source, lot.centroid)
    except RoutingError:
        drive = analytic.drive(source, lot.centroid)
        degraded = True
    try:
        walk = router.walk(lot.centroid, destination)
    except RoutingError:
        walk = analytic.walk(lot.centroid, destination)
        degraded = True
    if getattr(router, "last_degraded", False):
        degraded = True
    return drive, walk, degraded


def _leg_feature(leg: RouteLeg, lot_id: str) -> dict:
    return {
        "type": "Feature",
        "geometry": {
            "type": "LineString",
            "coordinates": [[p.lon, p.lat] for p in leg.points],
        },
        "properties": {
            "kind": f"{leg.mode}_leg",
            "lot_id": lot_id,
            "minutes": leg.minutes,
            "distance_km": leg.distance_km,
        },
    }


def _lot_feature(lot: ParkingLot) -> dict:
    return {
        "type": "Feature",
        "geometry": {
            "type": "Point",
            "coordinates": [lot.centroid.lon, lot.centroid.lat],
        },
        "properties": {"kind": "lot", "lot_id": lot.lot_id, "restriction": lot.restriction},
    }


def _route_collection(drive: RouteLeg, walk: RouteLeg, lot: ParkingLot) -> dict:
    return {
        "type": "FeatureCollection",
        "features": [
            _leg_feature(drive, lot.lot_id),
            _leg_feature(walk, lot.lot_id),
            _lot_feature(lot),
        ],
    }


def handle_recommend(body: RecommendRequest, snapshot: Snapshot) -> dict:
    """Run the engine for one request and assemble the wire response."""
    # Fields the request left out fall back to the snapshot's configured
    # defaults rather than the package constants.
    provided = body.model_fields_set
    defaults = snapshot.defaults
    query = Query(
        source=body.from_.to_point(),
        destination=body.to.to_point(),
        arrival_window=TimeWindow(_aware(body.arrive), body.tau_minutes),
        duration_minutes=body.duration_minutes,
        likelihood_threshold=body.threshold_likelihood
        if "threshold_likelihood" in provided
        else defaults.threshold_likelihood,
        epsilon=body.epsilon if "epsilon" in provided else defaults.epsilon,
        top_k=body.top_k if "top_k" in provided else defaults.top_k,
    )
    result = recommend(query, snapshot.lots, snapshot.events, snapshot.schedules, snapshot.router)
    by_id = {c.lot_id: c for c in result.members}
    recommendations = []
    for lot_id in result.selected:
        candidate = by_id[lot_id]
        lot = snapshot.lots.get(lot_id)
        assert lot is not None
        drive, walk, degraded = build_route(
            query.source, lot, query.destination, snapshot.router, snapshot.speeds
        )
        crowding = result.crowding[lot_id]
        recommendations.append(
            {
                "lot_id": lot_id,
                "objectives": {
                    "travel_min": candidate.objectives.travel_min,
                    "walk_km": candidate.objectives.walk_km,
                    "fare": candidate.objectives.fare,
                    "likelihood": candidate.objectives.likelihood,
                },
                "crowding": None if isinf(crowding) else crowding,
                "route_degraded": degraded,
                "routes": _route_collection(drive, walk, lot),
            }
        )
    return {"status": result.status, "recommendations": recommendations}


def create_app(snapshot: Snapshot) -> FastAPI:
    app = FastAPI(title="moparker", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def schema_error(_request: Request, exc: RequestValidationError):
        errors = [
            {
                "field": ".".join(str(p) for p in err["loc"] if p != "body"),
                "message": err["msg"],
            }
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400, content={"status": "invalid_request", "errors": errors}
        )

    @app.post("/v1/recommend")
    def recommend_endpoint(body: RecommendRequest):
        semantic = _semantic_errors(body)
        if semantic:
            return JSONResponse(
                status_code=422,
                content={"status": "invalid_parameters", "errors": semantic},
            )
        return handle_recommend(body, snapshot)

    @app.get("/v1/lots")
    def lots_endpoint():
        return {
            "lots": [
                {
                    "lot_id": lot.lot_id,
                    "restriction": lot.restriction,
                    "fare_schedule_id": lot.fare_schedule_id,
                    "centroid": {"lat": lot.centroid.lat, "lon": lot.centroid.lon},
                    "n_bays": len(lot.bays),
                }
                for lot in snapshot.lots
            ]
        }

    @app.get("/v1/lots/{lot_id}/likelihood")
    def likelihood_endpoint(
        lot_id: str, at: datetime, tau: float = 30.0, method: str | None = None
    ):
        lot = snapshot.lots.get(lot_id)
        if lot is None:
            raise HTTPException(status_code=404, detail=f"unknown lot {lot_id!r}")
        if tau <= 0:
            return JSONResponse(
                status_code=422,
                content={
                    "status": "invalid_parameters",
                    "errors": [{"field": "tau", "message": "must be > 0"}],
                },
            )
        window = TimeWindow(_aware(at), tau)
        historical = likelihood(lot, snapshot.events, window)
        payload = {
            "lot_id": lot_id,
            "at": window.start.isoformat(),
            "tau_minutes": tau,
            "likelihood": historical,
        }
        if method is not None:
            payload.update(_predicted_likelihood(lot, snapshot.events, window, method))
        return payload

    @app.get("/v1/health")
    def health_endpoint():
        return {
            "status": "ok",
            "lots": len(snapshot.lots),
            "bays": sum(len(lot.bays) for lot in snapshot.lots),
            "events": len(snapshot.events),
        }

    return app


def _predicted_likelihood(
    lot: ParkingLot, events: EventStore, window: TimeWindow, method: str
) -> dict:
    """Forecast the window's availability from the preceding day of history.

    Falls back to the historical value (method_applied false) when there is
    not enough history to forecast from.
    """
    from datetime import timedelta

    history_span = (window.start - timedelta(days=1), window.start)
    try:
        series = build_series(lot, events, window.minutes, history_span)
        if len(series) == 0:
            raise ValueError("no history")
        forecast = predict(series, horizon=window.minutes, method=method)
    except ValueError as exc:
        if "unknown predictor" in str(exc):
            raise HTTPException(status_code=422, detail=str(exc)) from None
        return {"method": method, "method_applied": False}
    return {
        "method": method,
        "method_applied": True,
        "predicted_likelihood": 1.0 - forecast,
    }


def serve(config: ServiceConfig) -> None:
    """Load the snapshot and run the service until interrupted."""
    import uvicorn

    app = create_app(load_snapshot(config))
    uvicorn.run(app, host=config.host, port=config.port)
