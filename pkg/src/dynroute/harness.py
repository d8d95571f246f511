"""Experiment harness: route comparisons, threshold sweeps, file outputs.

A comparison pits the time-aware route against a plan frozen from the
departure-time table: the static route is found once on the matrix at the
departure time, then both are priced with the live table.  ``delta`` is the
experienced time of the frozen route minus the time-aware total, so positive
values mean the time-aware route won.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .config import with_thresholds
from .errors import EmptyInput, Unreachable
from .graph import RoadGraph, build_graph, load_edges, load_nodes
from .prediction import predict_timeline
from .routing import dynamic_dijkstra, experienced_time, static_dijkstra
from .timeline import WeightTimeline, load_timeline


@dataclass(frozen=True)
class ComparisonRecord:
    """One source/destination comparison.

    ``T`` is the experienced time of the departure-frozen route, ``tau``
    the time-aware total, ``delta`` their difference (T - tau).
    """

    source: int
    destination: int
    T: float
    tau: float
    delta: float


def compare_pair(timeline: WeightTimeline, source: int, destination: int,
                 depart: float = 0.0) -> ComparisonRecord:
    """Price the time-aware route and the departure-frozen route between
    one pair, both against the live table."""
    dyn = dynamic_dijkstra(timeline, source, destination)
    frozen = static_dijkstra(timeline.matrix_at(depart), source, destination)
    T = experienced_time(timeline, frozen.path, depart)
    return ComparisonRecord(
        source=source,
        destination=destination,
        T=T,
        tau=dyn.total_time,
        delta=T - dyn.total_time,
    )


def run_comparisons(timeline: WeightTimeline, pairs, depart: float = 0.0):
    """Compare every pair, dropping the unroutable ones.

    Returns (records, skipped) where ``skipped`` lists the pairs that had
    no route in one of the two searches.
    """
    records: list[ComparisonRecord] = []
    skipped: list[tuple[int, int]] = []
    for source, destination in pairs:
        try:
            records.append(compare_pair(timeline, source, destination, depart))
        except Unreachable:
            skipped.append((source, destination))
    return records, skipped


def average_difference(records) -> float:
    """Mean delta over comparison records."""
    records = list(records)
    if not records:
        raise EmptyInput("no comparison records to average")
    return sum(r.delta for r in records) / len(records)


def sample_pairs(node_count: int, count: int, rng: np.random.Generator):
    """Draw ``count`` distinct-endpoint (source, destination) pairs."""
    pairs = []
    while len(pairs) < count:
        s = int(rng.integers(node_count))
        d = int(rng.integers(node_count))
        if s != d:
            pairs.append((s, d))
    return pairs


@dataclass(frozen=True)
class SweepCell:
    """Outcome of one threshold combination in a sweep.

    ``n`` counts the comparisons behind the average and is at least one;
    combinations with nothing routable never produce a cell.
    """

    alpha: float
    beta: float
    lam: float
    n: int
    seed: int | None


def alpha_beta_sweep(world, alphas, betas, pairs, horizon: int):
    """Re-run the forecast and comparisons for every valid threshold pair.

    Each cell clones the same base world (generator state included), swaps
    in its thresholds, forecasts over ``horizon`` seconds and averages delta
    over ``pairs``.  Combinations violating alpha < beta are skipped, as are
    combinations where no pair is routable.  Repeat calls on the same base
    world are therefore identical.
    """
    cells: list[SweepCell] = []
    for alpha in alphas:
        for beta in betas:
            if not 0 < alpha < beta:
                continue
            clone = world.clone()
            clone.params = with_thresholds(clone.params, alpha, beta)
            timeline = predict_timeline(clone, horizon)
            records, _ = run_comparisons(timeline, pairs)
            if not records:
                continue
            cells.append(SweepCell(alpha=alpha, beta=beta,
                                   lam=average_difference(records),
                                   n=len(records), seed=world.seed))
    return cells


# ---------------------------------------------------------------------------
# File outputs.  Floats are written with repr() so identical runs produce
# byte-identical files.


def write_comparisons_csv(path, records) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst", "T", "tau", "delta"])
        for r in records:
            writer.writerow([r.source, r.destination, repr(r.T), repr(r.tau),
                             repr(r.delta)])


def write_comparisons_json(path, records) -> None:
    rows = [
        {"src": r.source, "dst": r.destination, "T": r.T, "tau": r.tau,
         "delta": r.delta}
        for r in records
    ]
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_sweep_csv(path, cells) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["alpha", "beta", "lambda", "n", "seed"])
        for c in cells:
            seed = "" if c.seed is None else c.seed
            writer.writerow([repr(c.alpha), repr(c.beta), repr(c.lam), c.n, seed])


def write_sweep_json(path, cells) -> None:
    rows = [
        {"alpha": c.alpha, "beta": c.beta, "lambda": c.lam, "n": c.n,
         "seed": c.seed}
        for c in cells
    ]
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=2, sort_keys=True)
        fh.write("\n")


def write_aggregates_csv(path, aggregates) -> None:
    """Write per-edge flow aggregates, one row per (tick, edge, direction).

    ``k`` is the count density (vehicles per meter), ``u`` the mean speed,
    ``q`` the flow and ``tt`` the travel time, so q = k * u holds row-wise.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tick", "edge_id", "dir", "k", "u", "q", "tt"])
        for a in aggregates:
            writer.writerow([a.tick, a.edge_id, a.direction, repr(a.raw_density),
                             repr(a.mean_speed), repr(a.flow),
                             repr(a.travel_time)])


def write_events_csv(path, events) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tick", "event_kind", "vehicle_id", "node_or_edge_id"])
        for tick, kind, vid, where in events:
            writer.writerow([tick, kind, vid, where])


def snapshot_edges(world):
    """Current edge state as (tick, edge_id, fwd_density, bwd_density,
    fwd_tt, bwd_tt) rows."""
    return [
        (world.tick, e.id, e.density[0], e.density[1],
         e.travel_time[0], e.travel_time[1])
        for e in world.graph.edges
    ]


def write_snapshot_csv(path, rows) -> None:
    """Write edge state rows collected with ``snapshot_edges``."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["tick", "edge_id", "fwd_density", "bwd_density",
                         "fwd_tt", "bwd_tt"])
        for tick, eid, fd, bd, ft, bt in rows:
            writer.writerow([tick, eid, repr(fd), repr(bd), repr(ft), repr(bt)])


def write_dot(path, graph: RoadGraph) -> None:
    """Graphviz rendering; edge labels carry the two directional travel
    times as ``tt_fwd/tt_bwd``."""
    with open(path, "w") as fh:
        fh.write("graph network {\n")
        for n in graph.nodes:
            shape = "doublecircle" if n.open else "circle"
            fh.write(f'  {n.id} [shape={shape}];\n')
        for e in graph.edges:
            label = f"{e.travel_time[0]:.1f}/{e.travel_time[1]:.1f}"
            fh.write(f'  {e.start} -- {e.end} [label="{label}"];\n')
        fh.write("}\n")


# ---------------------------------------------------------------------------
# Bundled ten-node benchmark network and its travel-time table.


def _data_path(name: str):
    return resources.as_file(resources.files("dynroute").joinpath("data", name))


def table4_timeline() -> WeightTimeline:
    """The bundled ten-node benchmark travel-time table."""
    with _data_path("table4.timeline") as p:
        return load_timeline(p)


def table4_graph() -> RoadGraph:
    """The bundled ten-node benchmark network."""
    with _data_path("table4_nodes.csv") as p:
        nodes = load_nodes(p)
    with _data_path("table4_edges.csv") as p:
        edges = load_edges(p)
    return build_graph(nodes, edges)


def replay_table4() -> dict:
    """Route the bundled benchmark end to end and report both strategies.

    Returns the time-aware path and total, the departure-frozen path with
    its planned and experienced totals, and the relative improvement of the
    time-aware route over the frozen one.
    """
    timeline = table4_timeline()
    source, destination = 0, timeline.node_count - 1
    dyn = dynamic_dijkstra(timeline, source, destination)
    frozen = static_dijkstra(timeline.matrix_at(0.0), source, destination)
    tau = experienced_time(timeline, frozen.path, 0.0)
    return {
        "dynamic_path": dyn.path,
        "dynamic_total": dyn.total_time,
        "static_path": frozen.path,
        "static_planned_total": frozen.total_time,
        "static_experienced_total": tau,
        "improvement": (tau - dyn.total_time) / tau,
    }
