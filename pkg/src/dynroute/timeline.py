"""Timestamp-keyed travel-time tables.

A timeline stores, for each recorded timestamp, the directed travel time of
every arc in a fixed sparsity pattern.  Lookups use the latest recorded key
at or before the query time; queries past the last key reuse the last key.
The first key must be 0 so every query time is covered.

File format: blocks introduced by a bare integer timestamp, followed by
``from,to,travel_time`` rows, separated by blank lines.  An optional
``symmetric: true`` header line mirrors every row onto the reverse arc.
"""

from __future__ import annotations

from bisect import bisect_right
from pathlib import Path

import numpy as np

from .errors import EmptyTimeline, MalformedRow, MissingEdge


class WeightTimeline:
    """Piecewise-constant directed travel times over a shared arc set.

    Attributes:
        keys: sorted int64 array of recorded timestamps, keys[0] == 0.
        arcs: list of (from, to) pairs, one per column of ``weights``.
        weights: float64 array of shape (len(keys), len(arcs)).
        node_count: 1 + the largest node id mentioned.
    """

    def __init__(self, keys, arcs: list[tuple[int, int]], weights):
        keys = np.asarray(keys, dtype=np.int64)
        weights = np.asarray(weights, dtype=np.float64)
        if keys.ndim != 1 or keys.size == 0:
            raise EmptyTimeline("timeline needs at least one timestamp key")
        if np.any(np.diff(keys) <= 0):
            raise MalformedRow("timeline keys must be strictly increasing")
        if keys[0] != 0:
            raise MalformedRow(f"first timeline key must be 0, got {keys[0]}")
        if weights.shape != (keys.size, len(arcs)):
            raise MalformedRow(
                f"weight table shape {weights.shape} does not match "
                f"{keys.size} keys x {len(arcs)} arcs"
            )
        if len(set(arcs)) != len(arcs):
            raise MalformedRow("duplicate arc in timeline")
        if not np.all(weights > 0):
            raise MalformedRow("travel times must be strictly positive")
        self.keys = keys
        self.arcs = list(arcs)
        self.weights = weights
        n = 0
        for u, v in arcs:
            if u < 0 or v < 0:
                raise MalformedRow(f"negative node id in arc ({u}, {v})")
            n = max(n, u + 1, v + 1)
        self.node_count = n
        self._col = {arc: j for j, arc in enumerate(self.arcs)}
        # CSR-style adjacency over the arc set, neighbors sorted per node.
        out: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for j, (u, v) in enumerate(self.arcs):
            out[u].append((v, j))
        indptr = np.zeros(n + 1, dtype=np.int64)
        nbrs = np.empty(len(arcs), dtype=np.int64)
        arc_cols = np.empty(len(arcs), dtype=np.int64)
        pos = 0
        for u in range(n):
            out[u].sort()
            for v, j in out[u]:
                nbrs[pos] = v
                arc_cols[pos] = j
                pos += 1
            indptr[u + 1] = pos
        self.indptr = indptr
        self.nbrs = nbrs
        self.arc_cols = arc_cols

    def key_index(self, t: float) -> int:
        """Index of the latest key at or before ``t``."""
        if t < self.keys[0]:
            raise MalformedRow(f"query time {t} precedes first key {self.keys[0]}")
        return bisect_right(self.keys, t) - 1

    def arc_weight(self, u: int, v: int, t: float) -> float:
        col = self._col.get((u, v))
        if col is None:
            raise MissingEdge(f"no arc ({u}, {v}) in timeline")
        return float(self.weights[self.key_index(t), col])

    def matrix_at(self, t: float):
        """Dense node_count x node_count matrix at time ``t``; absent arcs
        are +inf and the diagonal is 0."""
        n = self.node_count
        m = np.full((n, n), np.inf, dtype=np.float64)
        np.fill_diagonal(m, 0.0)
        row = self.weights[self.key_index(t)]
        for j, (u, v) in enumerate(self.arcs):
            m[u, v] = row[j]
        return m

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightTimeline):
            return NotImplemented
        return (
            np.array_equal(self.keys, other.keys)
            and self.arcs == other.arcs
            and np.array_equal(self.weights, other.weights)
        )


def weights_at(timeline: WeightTimeline, t: float):
    """Dense travel-time matrix in effect at time ``t``."""
    return timeline.matrix_at(t)


def load_timeline(path: str | Path) -> WeightTimeline:
    """Parse a timeline file.

    Duplicate timestamp blocks are merged; a conflicting value for the same
    arc at the same timestamp is an error.  With ``symmetric: true`` each
    row also defines the reverse arc.
    """
    symmetric = False
    # per timestamp: {(u, v): weight}
    blocks: dict[int, dict[tuple[int, int], float]] = {}
    current: dict[tuple[int, int], float] | None = None
    current_ts: int | None = None

    with open(path) as fh:
        for line_no, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.lower().startswith("symmetric:"):
                value = line.split(":", 1)[1].strip().lower()
                if value not in ("true", "false"):
                    raise MalformedRow(f"line {line_no}: symmetric must be true|false")
                symmetric = value == "true"
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) == 1:
                try:
                    ts = int(parts[0])
                except ValueError as exc:
                    raise MalformedRow(f"line {line_no}: bad timestamp {line!r}") from exc
                current = blocks.setdefault(ts, {})
                current_ts = ts
                continue
            if len(parts) != 3:
                raise MalformedRow(f"line {line_no}: expected from,to,travel_time")
            if current is None:
                raise MalformedRow(f"line {line_no}: row before any timestamp header")
            try:
                u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError as exc:
                raise MalformedRow(f"line {line_no}: {exc}") from exc
            if w <= 0:
                raise MalformedRow(f"line {line_no}: travel time must be > 0")
            pairs = [((u, v), w)]
            if symmetric:
                pairs.append(((v, u), w))
            for arc, weight in pairs:
                if arc in current and current[arc] != weight:
                    raise MalformedRow(
                        f"line {line_no}: arc {arc} at t={current_ts} already has "
                        f"travel time {current[arc]}, conflicting {weight}"
                    )
                current[arc] = weight

    if not blocks:
        raise EmptyTimeline(f"{path}: no timestamp blocks")
    keys = sorted(blocks)
    arcs = sorted(blocks[keys[0]])
    arc_set = set(arcs)
    for ts in keys:
        if set(blocks[ts]) != arc_set:
            raise MalformedRow(
                f"timestamp {ts} covers a different arc set than timestamp {keys[0]}"
            )
    weights = np.array([[blocks[ts][arc] for arc in arcs] for ts in keys])
    return WeightTimeline(keys, arcs, weights)


def write_timeline(path: str | Path, timeline: WeightTimeline) -> None:
    """Write a timeline in the block format ``load_timeline`` reads."""
    with open(path, "w") as fh:
        for i, ts in enumerate(timeline.keys):
            if i:
                fh.write("\n")
            fh.write(f"{int(ts)}\n")
            for j, (u, v) in enumerate(timeline.arcs):
                fh.write(f"{u},{v},{repr(float(timeline.weights[i, j]))}\n")


def timeline_from_graph(graph, keys=None) -> WeightTimeline:
    """Snapshot a graph's live directional travel times into a one-key
    timeline (or the given keys, all holding the current snapshot)."""
    if keys is None:
        keys = [0]
    arcs = []
    row = []
    for e in graph.edges:
        arcs.append((e.start, e.end))
        row.append(e.travel_time[0])
        arcs.append((e.end, e.start))
        row.append(e.travel_time[1])
    order = np.argsort([a[0] * graph.node_count + a[1] for a in arcs])
    arcs = [arcs[i] for i in order]
    row = [row[i] for i in order]
    weights = np.tile(np.asarray(row, dtype=np.float64), (len(keys), 1))
    return WeightTimeline(keys, arcs, weights)
