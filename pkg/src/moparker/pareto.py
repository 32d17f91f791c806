"""Trade-off recommendation core: dominance, fronts, crowding, selection.

Travel time, walk distance and fare are minimized; likelihood is maximized.
A candidate dominates another when it is no worse on every objective and
strictly better on at least one. The engine keeps the non-dominated set,
optionally thinned by additive epsilon-dominance over per-instance min-max
normalized objectives, ranks survivors by crowding distance (boundary points
get +inf) and returns the top-k most isolated ones.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .lots import LotDB, ParkingLot
from .objectives import (
    FareSchedule,
    ObjectiveVector,
    Query,
    objective_vector,
)
from .routing import Router

OBJECTIVE_NAMES = ("travel_min", "walk_km", "fare", "likelihood")


@dataclass(frozen=True)
class Candidate:
    lot_id: str
    objectives: ObjectiveVector


@dataclass(frozen=True)
class ObjectiveThresholds:
    """Hard feasibility bounds applied before refinement; None disables one."""

    max_travel_min: float | None = None
    max_walk_km: float | None = None
    max_fare: float | None = None
    min_likelihood: float | None = None

    def admits(self, v: ObjectiveVector) -> bool:
        if self.max_travel_min is not None and v.travel_min > self.max_travel_min:
            return False
        if self.max_walk_km is not None and v.walk_km > self.max_walk_km:
            return False
        if self.max_fare is not None and v.fare > self.max_fare:
            return False
        if self.min_likelihood is not None and v.likelihood < self.min_likelihood:
            return False
        return True


@dataclass
class FrontResult:
    """Outcome of the recommendation pipeline for one query."""

    members: list[Candidate]
    crowding: dict[str, float]
    selected: list[str]
    status: str = "ok"  # ok | no_feasible_lot | empty_front


@dataclass
class ComparisonReport:
    """Proportion of runs in which each policy's output attains the
    candidate-set optimum of each objective."""

    runs: int
    moparker: dict[str, float] = field(default_factory=dict)
    greedy: dict[str, float] = field(default_factory=dict)


def _min_tuple(v: ObjectiveVector) -> tuple[float, float, float, float]:
    # All axes as minimization: likelihood negated.
    return (v.travel_min, v.walk_km, v.fare, -v.likelihood)


def _matrix(candidates: Sequence[Candidate]) -> np.ndarray:
    return np.array([_min_tuple(c.objectives) for c in candidates], dtype=float)


def dominates(a: Candidate, b: Candidate) -> bool:
    """True when ``a`` is no worse than ``b`` everywhere and better somewhere."""
    at = _min_tuple(a.objectives)
    bt = _min_tuple(b.objectives)
    return all(x <= y for x, y in zip(at, bt)) and any(x < y for x, y in zip(at, bt))


def _pairwise_dominance(m: np.ndarray, shift: float = 0.0) -> np.ndarray:
    """dom[i, j]: row i (shifted down by ``shift``) is no worse than row j on
    every column and strictly better on at least one (min axes)."""
    n = m.shape[0]
    le_all = np.ones((n, n), dtype=bool)
    lt_any = np.zeros((n, n), dtype=bool)
    for k in range(m.shape[1]):
        column = m[:, k] - shift if shift else m[:, k]
        le_all &= column[:, None] <= m[None, :, k]
        lt_any |= column[:, None] < m[None, :, k]
    return le_all & lt_any


def _dominated_mask(m: np.ndarray) -> np.ndarray:
    """dominated[j] is True when some row i dominates row j (min axes)."""
    return _pairwise_dominance(m).any(axis=0)


def naive_front(candidates: Sequence[Candidate]) -> list[Candidate]:
    """The non-dominated subset by definition: candidates no other candidate
    dominates. Order-independent; input order is preserved in the output."""
    if not candidates:
        return []
    dominated = _dominated_mask(_matrix(candidates))
    return [c for i, c in enumerate(candidates) if not dominated[i]]


def epsilon_front(candidates: Sequence[Candidate], epsilon: float) -> list[Candidate]:
    """Candidates that survive additive epsilon-dominance thinning.

    Objectives are min-max normalized to [0, 1] per dimension over the whole
    candidate set (likelihood negated first; a constant dimension normalizes
    to 0). ``a`` epsilon-dominates ``b`` iff ``a_n[m] - eps <= b_n[m]`` on
    every dimension with strict inequality somewhere.

    A candidate is dropped when a better-ranked candidate epsilon-dominates
    it, where rank orders by normalized-objective sum with lot_id breaking
    ties; of two near-duplicates the better-ranked box representative is the
    one that survives. Because a plain dominator always ranks better than
    what it dominates, ``epsilon == 0`` yields exactly the non-dominated
    set, every survivor at any epsilon belongs to it, the survivor set only
    shrinks as epsilon grows, and it is never empty for non-empty input.
    Deterministic for fixed input.
    """
    if epsilon < 0:
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    n = len(candidates)
    if n == 0:
        return []
    m = _matrix(candidates)

    if epsilon == 0:
        # Raw values, no normalization: float-exact reduction to the
        # non-dominated set.
        eliminated = _dominated_mask(m)
        return [c for i, c in enumerate(candidates) if not eliminated[i]]

    mins = m.min(axis=0)
    spans = m.max(axis=0) - mins
    safe = np.where(spans > 0, spans, 1.0)
    normed = np.where(spans > 0, (m - mins) / safe, 0.0)

    # Left-to-right summation keeps the rank reproducible in plain floats.
    sums = ((normed[:, 0] + normed[:, 1]) + normed[:, 2]) + normed[:, 3]
    order = sorted(range(n), key=lambda i: (sums[i], candidates[i].lot_id))
    rank = np.empty(n, dtype=int)
    for position, index in enumerate(order):
        rank[index] = position

    edom = _pairwise_dominance(normed, shift=epsilon)
    kills = edom & (rank[:, None] < rank[None, :])
    eliminated = kills.any(axis=0)
    return [c for i, c in enumerate(candidates) if not eliminated[i]]


def crowding_distances(
    front: Sequence[Candidate],
    thresholds: ObjectiveThresholds | None = None,
) -> dict[str, float]:
    """Crowding distance per lot_id over the (threshold-filtered) front.

    Per objective, candidates are sorted ascending (ties by lot_id); the two
    boundary candidates get +inf and each interior candidate accumulates the
    neighbour gap normalized by the objective's max-min span. An objective
    with zero span contributes nothing to interior distances. Returns an
    empty mapping when the thresholds filter out every candidate.
    """
    members = [
        c for c in front if thresholds is None or thresholds.admits(c.objectives)
    ]
    if not members:
        return {}
    distances = {c.lot_id: 0.0 for c in members}
    if len(distances) != len(members):
        raise ValueError("duplicate lot_id in front")
    for objective in OBJECTIVE_NAMES:
        ordered = sorted(
            members, key=lambda c: (getattr(c.objectives, objective), c.lot_id)
        )
        distances[ordered[0].lot_id] = float("inf")
        distances[ordered[-1].lot_id] = float("inf")
        span = getattr(ordered[-1].objectives, objective) - getattr(
            ordered[0].objectives, objective
        )
        if span <= 0:
            continue
        for i in range(1, len(ordered) - 1):
            gap = getattr(ordered[i + 1].objectives, objective) - getattr(
                ordered[i - 1].objectives, objective
            )
            distances[ordered[i].lot_id] += gap / span
    return distances


def select_top_k(
    front: Sequence[Candidate], crowding: Mapping[str, float], k: int
) -> list[Candidate]:
    """Most isolated first: descending crowding distance (+inf leads), ties by
    lot_id ascending, truncated to k."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k!r}")
    ordered = sorted(front, key=lambda c: (-crowding[c.lot_id], c.lot_id))
    return ordered[:k]


def front_from_candidates(
    candidates: Sequence[Candidate],
    epsilon: float,
    thresholds: ObjectiveThresholds | None = None,
    top_k: int | None = None,
) -> FrontResult:
    """Threshold filter -> epsilon front -> crowding -> top-k selection."""
    feasible = [
        c for c in candidates if thresholds is None or thresholds.admits(c.objectives)
    ]
    if not feasible:
        return FrontResult(members=[], crowding={}, selected=[], status="no_feasible_lot")
    front = epsilon_front(feasible, epsilon)
    if not front:
        return FrontResult(members=[], crowding={}, selected=[], status="empty_front")
    crowding = crowding_distances(front)
    take = len(front) if top_k is None else top_k
    selected = [c.lot_id for c in select_top_k(front, crowding, take)]
    return FrontResult(members=front, crowding=crowding, selected=selected)


def candidate_vectors(
    query: Query,
    lot_db: LotDB | Iterable[ParkingLot],
    events,
    schedules: Mapping[str, FareSchedule],
    router: Router | None = None,
) -> list[Candidate]:
    return [
        Candidate(lot.lot_id, objective_vector(query, lot, events, schedules, router))
        for lot in lot_db
    ]


def recommend(
    query: Query,
    lot_db: LotDB,
    events,
    schedules: Mapping[str, FareSchedule],
    router: Router | None = None,
) -> FrontResult:
    """Full pipeline for one query over every lot in the database."""
    candidates = candidate_vectors(query, lot_db, events, schedules, router)
    thresholds = ObjectiveThresholds(min_likelihood=query.likelihood_threshold)
    return front_from_candidates(candidates, query.epsilon, thresholds, query.top_k)


def greedy_pick(
    query: Query,
    lot_db: LotDB,
    p_x_m: float,
    rng: random.Random,
) -> ParkingLot | None:
    """Uniform random choice among lots within ``p_x_m`` metres of the
    destination; None when no lot is in range."""
    if p_x_m <= 0:
        raise ValueError(f"proximity threshold must be > 0, got {p_x_m!r}")
    in_range = lot_db.nearby(query.destination, p_x_m)
    if not in_range:
        return None
    return rng.choice(in_range)


def greedy_recommend(
    query: Query,
    lot_db: LotDB,
    events,
    schedules: Mapping[str, FareSchedule],
    p_x_m: float = 500.0,
    rng_seed: int = 0,
    router: Router | None = None,
) -> Candidate | None:
    """Proximity-threshold baseline: seeded uniform pick near the destination."""
    lot = greedy_pick(query, lot_db, p_x_m, random.Random(rng_seed))
    if lot is None:
        return None
    return Candidate(lot.lot_id, objective_vector(query, lot, events, schedules, router))


def _optima(candidates: Sequence[Candidate]) -> dict[str, float]:
    return {
        "travel_min": min(c.objectives.travel_min for c in candidates),
        "walk_km": min(c.objectives.walk_km for c in candidates),
        "fare": min(c.objectives.fare for c in candidates),
        "likelihood": max(c.objectives.likelihood for c in candidates),
    }


def _attains(value: float, objective: str, best: Mapping[str, float]) -> bool:
    return value == best[objective]


def compare_baseline(
    queries: Sequence[Query],
    lot_db: LotDB,
    events,
    schedules: Mapping[str, FareSchedule],
    runs: int = 100,
    rng_seed: int = 7,
    p_x_m: float = 500.0,
    router: Router | None = None,
) -> ComparisonReport:
    """Run the engine and the greedy baseline ``runs`` times per query and log
    how often each output contains the per-objective candidate-set optimum."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    seed_stream = random.Random(rng_seed)
    hits = {
        "moparker": {name: 0 for name in OBJECTIVE_NAMES},
        "greedy": {name: 0 for name in OBJECTIVE_NAMES},
    }
    total = 0
    for query in queries:
        candidates = candidate_vectors(query, lot_db, events, schedules, router)
        if not candidates:
            continue
        best = _optima(candidates)
        result = front_from_candidates(
            candidates,
            query.epsilon,
            ObjectiveThresholds(min_likelihood=query.likelihood_threshold),
            query.top_k,
        )
        front_hit = {
            name: any(
                _attains(getattr(c.objectives, name), name, best)
                for c in result.members
            )
            for name in OBJECTIVE_NAMES
        }
        by_id = {c.lot_id: c for c in candidates}
        for _ in range(runs):
            run_rng = random.Random(seed_stream.getrandbits(64))
            total += 1
            for name in OBJECTIVE_NAMES:
                hits["moparker"][name] += front_hit[name]
            pick = greedy_pick(query, lot_db, p_x_m, run_rng)
            if pick is None:
                continue
            vec = by_id[pick.lot_id].objectives
            for name in OBJECTIVE_NAMES:
                hits["greedy"][name] += _attains(getattr(vec, name), name, best)
    if total == 0:
        return ComparisonReport(runs=runs)
    return ComparisonReport(
        runs=runs,
        moparker={k: v / total for k, v in hits["moparker"].items()},
        greedy={k: v / total for k, v in hits["greedy"].items()},
    )
