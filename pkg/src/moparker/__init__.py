"""moparker: multi-objective parking recommendation engine."""

from .geo import GeoPoint, SpeedModel, haversine_km, haversine_m, travel_minutes
from .ingest import EventStore, IngestReport, ParkingEvent, parse_events, store_events
from .lots import LotDB, ParkingBay, ParkingLot, cluster_bays, lot_database, nearby_lots
from .objectives import FareSchedule, ObjectiveVector, Query, objective_vector
from .occupancy import (
    OccupancySeries,
    PredictorEval,
    TimeWindow,
    build_series,
    evaluate_predictor,
    likelihood,
    occupied_time,
    predict,
)
from .pareto import (
    Candidate,
    ComparisonReport,
    FrontResult,
    ObjectiveThresholds,
    compare_baseline,
    crowding_distances,
    dominates,
    epsilon_front,
    greedy_recommend,
    naive_front,
    recommend,
    select_top_k,
)
from .routing import AnalyticRouter, FallbackRouter, RouteLeg, Router

__version__ = "0.1.0"

__all__ = [
    "AnalyticRouter",
    "Candidate",
    "ComparisonReport",
    "EventStore",
    "FallbackRouter",
    "FareSchedule",
    "FrontResult",
    "GeoPoint",
    "IngestReport",
    "LotDB",
    "ObjectiveThresholds",
    "ObjectiveVector",
    "OccupancySeries",
    "ParkingBay",
    "ParkingEvent",
    "ParkingLot",
    "PredictorEval",
    "Query",
    "RouteLeg",
    "Router",
    "SpeedModel",
    "TimeWindow",
    "build_series",
    "cluster_bays",
    "compare_baseline",
    "crowding_distances",
    "dominates",
    "epsilon_front",
    "evaluate_predictor",
    "greedy_recommend",
    "haversine_km",
    "haversine_m",
    "likelihood",
    "lot_database",
    "naive_front",
    "nearby_lots",
    "objective_vector",
    "occupied_time",
    "parse_events",
    "predict",
    "recommend",
    "select_top_k",
    "store_events",
    "travel_minutes",
]
