"""Route search over timestamp-keyed and constant travel-time tables."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MissingEdge, NonPositiveWeight, Unreachable, Unsatisfiable
from .kernels import dynamic_dijkstra_arrays, static_dijkstra_arrays
from .timeline import WeightTimeline


@dataclass
class RouteResult:
    """Outcome of one route search.

    ``path`` runs source..destination inclusive.  ``departure_times[i]`` is
    the clock time at which the route leaves ``path[i]`` (one entry per hop).
    ``time_labels``/``parent`` are the full per-node label and parent arrays
    the search ended with; unreached nodes hold inf / -1.
    """

    source: int
    destination: int
    path: list[int]
    departure_times: list[float]
    total_time: float
    time_labels: np.ndarray
    parent: np.ndarray


def _check_endpoints(n: int, source: int, destination: int) -> None:
    if not 0 <= source < n:
        raise Unreachable(f"source {source} outside node range 0..{n - 1}, unreachable")
    if not 0 <= destination < n:
        raise Unreachable(
            f"destination {destination} outside node range 0..{n - 1}, unreachable"
        )
    if source == destination:
        raise Unsatisfiable(
            f"source and destination must differ, both are {source}"
        )


def _extract(source: int, destination: int, dist, parent) -> tuple[list[int], list[float]]:
    if not np.isfinite(dist[destination]):
        raise Unreachable(f"destination {destination} is unreachable from {source}")
    path = [destination]
    while path[-1] != source:
        prev = int(parent[path[-1]])
        if prev < 0:
            raise Unreachable(f"broken parent chain at node {path[-1]}, unreachable")
        path.append(prev)
    path.reverse()
    departures = [float(dist[u]) for u in path[:-1]]
    return path, departures


def dynamic_dijkstra(timeline: WeightTimeline, source: int, destination: int,
                     trace=None) -> RouteResult:
    """Earliest-arrival route when each hop's travel time is looked up at
    the clock time the hop begins.

    Labels enter a lazy-deletion heap ordered by (arrival time, node id);
    stale entries are skipped; the destination is never expanded outward.
    ``trace(node, label)`` is invoked at every non-stale pop when given.
    """
    _check_endpoints(timeline.node_count, source, destination)
    if not np.all(timeline.weights > 0):
        raise NonPositiveWeight("all travel times must be strictly positive")
    dist, parent = dynamic_dijkstra_arrays(
        timeline.indptr, timeline.nbrs, timeline.arc_cols,
        timeline.keys, timeline.weights, source, destination, trace=trace,
    )
    path, departures = _extract(source, destination, dist, parent)
    return RouteResult(
        source=source,
        destination=destination,
        path=path,
        departure_times=departures,
        total_time=float(dist[destination]),
        time_labels=dist,
        parent=parent,
    )


def static_dijkstra(matrix, source: int, destination: int) -> RouteResult:
    """Lowest-total-weight route over one fixed travel-time matrix.

    Absent arcs are +inf; the diagonal is ignored.  Tie-breaking matches
    the dynamic search, so the two agree exactly when the timeline never
    changes.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise MissingEdge(f"weight matrix must be square, got shape {matrix.shape}")
    off_diag = ~np.eye(matrix.shape[0], dtype=bool)
    finite = np.isfinite(matrix) & off_diag
    if np.any(matrix[finite] <= 0):
        raise NonPositiveWeight("all travel times must be strictly positive")
    _check_endpoints(matrix.shape[0], source, destination)
    dist, parent = static_dijkstra_arrays(matrix, source, destination)
    path, departures = _extract(source, destination, dist, parent)
    return RouteResult(
        source=source,
        destination=destination,
        path=path,
        departure_times=departures,
        total_time=float(dist[destination]),
        time_labels=dist,
        parent=parent,
    )


def experienced_time(timeline: WeightTimeline, path: list[int], depart: float = 0.0) -> float:
    """Total travel time of following ``path`` hop by hop, re-reading each
    hop's travel time at the clock time the hop begins."""
    if len(path) < 1:
        raise MissingEdge("path must contain at least one node")
    t = float(depart)
    for u, v in zip(path, path[1:]):
        t += timeline.arc_weight(u, v, t)
    return t - float(depart)
