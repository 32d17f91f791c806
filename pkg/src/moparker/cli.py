"""Command-line front end: ingest -> cluster -> recommend/compare/serve."""

from __future__ import annotations

import json
import sys
from datetime import datetime, timezone

import click

from .api import ServiceConfig, serve
from .geo import GeoPoint, SpeedModel
from .ingest import EventStore, load_events, save_events
from .lots import bays_from_events, cluster_bays, load_lots, save_lots
from .objectives import (
    DEFAULT_EPSILON,
    DEFAULT_LIKELIHOOD_THRESHOLD,
    DEFAULT_TOP_K,
    Query,
    load_fare_schedules,
)
from .occupancy import TimeWindow, build_series, evaluate_predictor
from .pareto import compare_baseline, recommend
from .routing import AnalyticRouter


def _parse_point(text: str) -> GeoPoint:
    try:
        lat, lon = (float(part) for part in text.split(","))
    except ValueError:
        raise click.BadParameter(f"expected 'lat,lon', got {text!r}") from None
    return GeoPoint(lat, lon)


def _parse_arrive(text: str) -> datetime:
    cleaned = text[:-1] + "+00:00" if text.endswith(("Z", "z")) else text
    dt = datetime.fromisoformat(cleaned)
    return dt if dt.tzinfo else dt.replace(tzinfo=timezone.utc)


@click.group()
def main():
    """Multi-objective parking recommendation tools."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--tz", default="UTC", show_default=True, help="IANA zone for naive timestamps.")
@click.option("--out", "out_path", required=True, type=click.Path())
def ingest(input_path: str, tz: str, out_path: str):
    """Parse an event CSV, report rejects, write the normalized store."""
    events, report = load_events(input_path, tz=tz)
    save_events(events, out_path)
    click.echo(f"accepted {report.accepted}, rejected {report.rejected}")
    for line, reason in report.reject_reasons:
        click.echo(f"  line {line}: {reason}", err=True)


@main.command()
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--dmax", default=25.0, show_default=True, help="Merge distance in metres.")
@click.option("--fare-schedule", default="free", show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path())
def cluster(store_path: str, dmax: float, fare_schedule: str, out_path: str):
    """Cluster the store's bays into lots and write the lot database."""
    events, _ = load_events(store_path)
    lots = cluster_bays(bays_from_events(events), d_max=dmax, fare_schedule_id=fare_schedule)
    save_lots(lots, out_path)
    click.echo(f"{len(lots)} lots from {sum(len(l.bays) for l in lots)} bays")


@main.command("evaluate-likelihood")
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--lots", "lots_path", required=True, type=click.Path(exists=True))
@click.option("--method", default="seasonal-naive", show_default=True)
@click.option("--horizon", default=15.0, show_default=True, help="Forecast horizon in minutes.")
@click.option("--bin", "bin_minutes", default=15.0, show_default=True)
@click.option("--report", "report_path", required=True, type=click.Path())
def evaluate_likelihood(
    store_path: str,
    lots_path: str,
    method: str,
    horizon: float,
    bin_minutes: float,
    report_path: str,
):
    """Rolling-origin MAE/RMSE of a likelihood predictor, per lot."""
    events, _ = load_events(store_path)
    store = EventStore(events)
    db = load_lots(lots_path)
    if not events:
        raise click.ClickException("store contains no events")
    span = (min(e.arrival for e in events), max(e.departure for e in events))
    per_lot = []
    skipped = 0
    for lot in db:
        series = build_series(lot, store, bin_minutes, span)
        try:
            result = evaluate_predictor(series, method, horizon)
        except ValueError:
            skipped += 1
            continue
        per_lot.append({"lot_id": lot.lot_id, "mae": result.mae, "rmse": result.rmse})
    payload = {
        "method": method,
        "horizon_minutes": horizon,
        "bin_minutes": bin_minutes,
        "granularity": "errors are evaluated per lot, not per bay",
        "lots_evaluated": len(per_lot),
        "lots_skipped": skipped,
        "per_lot": per_lot,
    }
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
    click.echo(f"evaluated {len(per_lot)} lots ({skipped} skipped), report at {report_path}")


@main.command("recommend")
@click.option("--lots", "lots_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--fares", "fares_path", required=True, type=click.Path(exists=True))
@click.option("--from", "from_text", required=True, help="Source as 'lat,lon'.")
@click.option("--to", "to_text", required=True, help="Destination as 'lat,lon'.")
@click.option("--arrive", required=True, help="Arrival window start, ISO-8601.")
@click.option("--tau", default=30.0, show_default=True, help="Arrival window length, minutes.")
@click.option("--duration", default=60.0, show_default=True, help="Parking duration, minutes.")
@click.option("--threshold-likelihood", default=DEFAULT_LIKELIHOOD_THRESHOLD, show_default=True)
@click.option("--epsilon", default=DEFAULT_EPSILON, show_default=True)
@click.option("--top-k", default=DEFAULT_TOP_K, show_default=True)
@click.option("--drive-kmh", default=30.0, show_default=True)
@click.option("--walk-kmh", default=5.0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def recommend_command(
    lots_path: str,
    store_path: str,
    fares_path: str,
    from_text: str,
    to_text: str,
    arrive: str,
    tau: float,
    duration: float,
    threshold_likelihood: float,
    epsilon: float,
    top_k: int,
    drive_kmh: float,
    walk_kmh: float,
    fmt: str,
):
    """Print the trade-off recommendations for one query."""
    events, _ = load_events(store_path)
    query = Query(
        source=_parse_point(from_text),
        destination=_parse_point(to_text),
        arrival_window=TimeWindow(_parse_arrive(arrive), tau),
        duration_minutes=duration,
        likelihood_threshold=threshold_likelihood,
        epsilon=epsilon,
        top_k=top_k,
    )
    result = recommend(
        query,
        load_lots(lots_path),
        EventStore(events),
        load_fare_schedules(fares_path),
        AnalyticRouter(SpeedModel(drive_kmh=drive_kmh, walk_kmh=walk_kmh)),
    )
    if fmt == "json":
        by_id = {c.lot_id: c for c in result.members}
        payload = {
            "status": result.status,
            "recommendations": [
                {
                    "lot_id": lot_id,
                    "objectives": dict(
                        zip(
                            ("travel_min", "walk_km", "fare", "likelihood"),
                            by_id[lot_id].objectives.as_tuple(),
                        )
                    ),
                    "crowding": None
                    if result.crowding[lot_id] == float("inf")
                    else result.crowding[lot_id],
                }
                for lot_id in result.selected
            ],
        }
        click.echo(json.dumps(payload, indent=2))
        return
    if not result.selected:
        click.echo(f"no recommendation ({result.status})")
        return
    by_id = {c.lot_id: c for c in result.members}
    header = f"{'lot_id':<12} {'travel_min':>10} {'walk_km':>8} {'fare':>6} {'likelihood':>10} {'crowding':>9}"
    click.echo(header)
    for lot_id in result.selected:
        v = by_id[lot_id].objectives
        cd = result.crowding[lot_id]
        cd_text = "inf" if cd == float("inf") else f"{cd:.3f}"
        click.echo(
            f"{lot_id:<12} {v.travel_min:>10.1f} {v.walk_km:>8.2f} "
            f"{v.fare:>6.2f} {v.likelihood:>10.2f} {cd_text:>9}"
        )


@main.command("compare")
@click.option("--queries", "queries_path", required=True, type=click.Path(exists=True))
@click.option("--lots", "lots_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--fares", "fares_path", required=True, type=click.Path(exists=True))
@click.option("--runs", default=100, show_default=True)
@click.option("--seed", default=7, show_default=True)
@click.option("--px", default=500.0, show_default=True, help="Greedy proximity threshold, metres.")
def compare_command(
    queries_path: str,
    lots_path: str,
    store_path: str,
    fares_path: str,
    runs: int,
    seed: int,
    px: float,
):
    """Engine vs greedy baseline: per-objective optimum-attainment rates."""
    with open(queries_path, encoding="utf-8") as fh:
        raw = json.load(fh)
    queries = []
    for item in raw["queries"]:
        queries.append(
            Query(
                source=GeoPoint(item["from"]["lat"], item["from"]["lon"]),
                destination=GeoPoint(item["to"]["lat"], item["to"]["lon"]),
                arrival_window=TimeWindow(_parse_arrive(item["arrive"]), item.get("tau_minutes", 30.0)),
                duration_minutes=item.get("duration_minutes", 60.0),
                likelihood_threshold=item.get("threshold_likelihood", 0.0),
                epsilon=item.get("epsilon", 0.0),
                top_k=item.get("top_k", DEFAULT_TOP_K),
            )
        )
    events, _ = load_events(store_path)
    report = compare_baseline(
        queries,
        load_lots(lots_path),
        EventStore(events),
        load_fare_schedules(fares_path),
        runs=runs,
        rng_seed=seed,
        p_x_m=px,
    )
    click.echo(json.dumps({"runs": report.runs, "moparker": report.moparker, "greedy": report.greedy}, indent=2))


@main.command("serve")
@click.option("--lots", "lots_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--fares", "fares_path", required=True, type=click.Path(exists=True))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--drive-kmh", default=30.0, show_default=True)
@click.option("--walk-kmh", default=5.0, show_default=True)
@click.option("--default-threshold-likelihood", default=DEFAULT_LIKELIHOOD_THRESHOLD, show_default=True)
@click.option("--default-epsilon", default=DEFAULT_EPSILON, show_default=True)
@click.option("--default-top-k", default=DEFAULT_TOP_K, show_default=True)
def serve_command(
    lots_path: str,
    store_path: str,
    fares_path: str,
    host: str,
    port: int,
    drive_kmh: float,
    walk_kmh: float,
    default_threshold_likelihood: float,
    default_epsilon: float,
    default_top_k: int,
):
    """Run the HTTP service over the given snapshot."""
    serve(
        ServiceConfig(
            store_path=store_path,
            lots_path=lots_path,
            fares_path=fares_path,
            host=host,
            port=port,
            drive_kmh=drive_kmh,
            walk_kmh=walk_kmh,
            default_threshold_likelihood=default_threshold_likelihood,
            default_epsilon=default_epsilon,
            default_top_k=default_top_k,
        )
    )


if __name__ == "__main__":
    sys.exit(main())
