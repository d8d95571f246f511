"""Road network model and CSV input and output.

Nodes and edges live in two CSV files.  Node rows are
``id,lat,lon,category`` with optional ``gaussian_mean,gaussian_sigma``
columns; a node is open to outside traffic exactly when those two columns
are present and non-empty.  Edge rows are ``id,start,end,distance,category``.
Every edge is bidirectional and carries independent per-direction traffic
state, indexed by the FORWARD/BACKWARD constants.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import DEFAULT_CATEGORIES, RoadCategory
from .errors import (
    DanglingEndpoint,
    DuplicateNodeId,
    InvalidGraph,
    MalformedRow,
    UnknownCategory,
    Unsatisfiable,
)

FORWARD = 0   # start -> end
BACKWARD = 1  # end -> start


@dataclass
class NodeRecord:
    """One junction of the road network.

    ``open`` nodes admit outside traffic: vehicles spawn there by Gaussian
    draws around ``gaussian_mean`` and may leave the network there.
    ``node_connections``/``edge_connections`` are filled by the graph
    builder.  ``external_vehicle_count`` accumulates the total number of
    vehicles that entered from outside at this node.
    """

    id: int
    lat: float
    lon: float
    category: str
    open: bool = False
    gaussian_mean: float = 0.0
    gaussian_sigma: float = 1.0
    node_connections: list[int] = field(default_factory=list)
    edge_connections: list[int] = field(default_factory=list)
    external_vehicle_count: int = 0


@dataclass
class EdgeRecord:
    """One bidirectional road segment with live per-direction traffic state.

    ``density``, ``mean_speed`` and ``travel_time`` are 2-vectors indexed by
    FORWARD/BACKWARD.  ``vehicles`` holds the ids of vehicles currently on
    each direction.
    """

    id: int
    start: int
    end: int
    distance: float  # meters
    category: str
    thickness: float = 0.0
    free_flow_speed: float = 0.0
    jam_speed: float = 0.0
    density: list[float] = field(default_factory=lambda: [0.0, 0.0])
    mean_speed: list[float] = field(default_factory=lambda: [0.0, 0.0])
    travel_time: list[float] = field(default_factory=lambda: [0.0, 0.0])
    vehicles: list[list[int]] = field(default_factory=lambda: [[], []])

    def direction_from(self, node_id: int) -> int:
        if node_id == self.start:
            return FORWARD
        if node_id == self.end:
            return BACKWARD
        raise DanglingEndpoint(f"node {node_id} is not an endpoint of edge {self.id}")

    def other_end(self, node_id: int) -> int:
        if node_id == self.start:
            return self.end
        if node_id == self.end:
            return self.start
        raise DanglingEndpoint(f"node {node_id} is not an endpoint of edge {self.id}")


@dataclass
class VehicleRecord:
    """One simulated vehicle.

    ``state`` is one of ``on_edge``, ``at_node``, ``exited``; ``at_node``
    only occurs mid-step, every step ends with vehicles on an edge or
    exited (edge_id -1).  While on an edge, ``edge_id``/``direction``
    locate it, ``current_speed`` is its speed this tick (never above
    ``max_speed``) and ``time_to_complete`` the remaining travel time
    estimate at that speed.
    """

    id: int
    state: str = "at_node"
    node_id: int = -1
    edge_id: int = -1
    direction: int = FORWARD
    thickness: float = 2.0
    max_speed: float = 33.0
    current_speed: float = 0.0
    time_to_complete: float = 0.0
    remaining_distance: float = 0.0


class RoadGraph:
    """Nodes plus edges with a prebuilt adjacency index.

    Node and edge ids must each be contiguous 0..N-1 / 0..E-1 so they can
    index arrays directly.  ``adjacency[u]`` lists ``(neighbor, edge_id)``
    pairs sorted by neighbor id.
    """

    def __init__(self, nodes: list[NodeRecord], edges: list[EdgeRecord]):
        self.nodes = nodes
        self.edges = edges
        self.adjacency: list[list[tuple[int, int]]] = [[] for _ in nodes]
        for e in edges:
            self.adjacency[e.start].append((e.end, e.id))
            self.adjacency[e.end].append((e.start, e.id))
        for n, lst in zip(nodes, self.adjacency):
            lst.sort()
            n.node_connections = [v for v, _ in lst]
            n.edge_connections = [eid for _, eid in lst]

    @property
    def node_count(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_between(self, u: int, v: int) -> EdgeRecord | None:
        for nbr, eid in self.adjacency[u]:
            if nbr == v:
                return self.edges[eid]
        return None

    def incident_edges(self, node_id: int) -> list[EdgeRecord]:
        return [self.edges[eid] for _, eid in self.adjacency[node_id]]

    def open_nodes(self) -> list[NodeRecord]:
        return [n for n in self.nodes if n.open]

    def reset_traffic(self) -> None:
        """Clear all live traffic state back to an empty network."""
        for e in self.edges:
            e.density = [0.0, 0.0]
            e.mean_speed = [e.free_flow_speed, e.free_flow_speed]
            if e.free_flow_speed > 0:
                tt = e.distance / e.free_flow_speed
            else:
                tt = 0.0
            e.travel_time = [tt, tt]
            e.vehicles = [[], []]


def _parse_float(row_no: int, name: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise MalformedRow(f"row {row_no}: bad {name} value {raw!r}") from exc


def _parse_int(row_no: int, name: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise MalformedRow(f"row {row_no}: bad {name} value {raw!r}") from exc


def load_nodes(path: str | Path) -> list[NodeRecord]:
    """Read a node CSV.  Rows gain ``open=True`` when the optional
    gaussian_mean / gaussian_sigma columns are both present and non-empty."""
    nodes: list[NodeRecord] = []
    seen: set[int] = set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        required = {"id", "lat", "lon", "category"}
        missing = required - set(reader.fieldnames)
        if missing:
            raise MalformedRow(f"{path}: missing columns {sorted(missing)}")
        for row_no, row in enumerate(reader, start=2):
            nid = _parse_int(row_no, "id", row["id"])
            if nid in seen:
                raise DuplicateNodeId(f"row {row_no}: node id {nid} repeated")
            seen.add(nid)
            mean_raw = (row.get("gaussian_mean") or "").strip()
            sigma_raw = (row.get("gaussian_sigma") or "").strip()
            is_open = bool(mean_raw) and bool(sigma_raw)
            node = NodeRecord(
                id=nid,
                lat=_parse_float(row_no, "lat", row["lat"]),
                lon=_parse_float(row_no, "lon", row["lon"]),
                category=row["category"].strip(),
                open=is_open,
                gaussian_mean=_parse_float(row_no, "gaussian_mean", mean_raw) if is_open else 0.0,
                gaussian_sigma=_parse_float(row_no, "gaussian_sigma", sigma_raw) if is_open else 1.0,
            )
            nodes.append(node)
    return nodes


def load_edges(path: str | Path) -> list[EdgeRecord]:
    """Read an edge CSV."""
    edges: list[EdgeRecord] = []
    seen: set[int] = set()
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        required = {"id", "start", "end", "distance", "category"}
        missing = required - set(reader.fieldnames)
        if missing:
            raise MalformedRow(f"{path}: missing columns {sorted(missing)}")
        for row_no, row in enumerate(reader, start=2):
            eid = _parse_int(row_no, "id", row["id"])
            if eid in seen:
                raise DuplicateNodeId(f"row {row_no}: edge id {eid} repeated")
            seen.add(eid)
            dist = _parse_float(row_no, "distance", row["distance"])
            if dist <= 0:
                raise MalformedRow(f"row {row_no}: distance must be > 0, got {dist}")
            edges.append(
                EdgeRecord(
                    id=eid,
                    start=_parse_int(row_no, "start", row["start"]),
                    end=_parse_int(row_no, "end", row["end"]),
                    distance=dist,
                    category=row["category"].strip(),
                )
            )
    return edges


def write_nodes(path: str | Path, nodes: list[NodeRecord]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "lat", "lon", "category", "gaussian_mean", "gaussian_sigma"])
        for n in nodes:
            if n.open:
                writer.writerow([n.id, repr(n.lat), repr(n.lon), n.category,
                                 repr(n.gaussian_mean), repr(n.gaussian_sigma)])
            else:
                writer.writerow([n.id, repr(n.lat), repr(n.lon), n.category, "", ""])


def write_edges(path: str | Path, edges: list[EdgeRecord]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "start", "end", "distance", "category"])
        for e in edges:
            writer.writerow([e.id, e.start, e.end, repr(e.distance), e.category])


def build_graph(
    nodes: list[NodeRecord],
    edges: list[EdgeRecord],
    categories: dict[str, RoadCategory] | None = None,
) -> RoadGraph:
    """Assemble and validate a RoadGraph, stamping category parameters onto
    edges and initialising traffic state to an empty network."""
    if categories is None:
        categories = DEFAULT_CATEGORIES
    if not nodes:
        raise InvalidGraph("no nodes")

    ids = sorted(n.id for n in nodes)
    if ids != list(range(len(nodes))):
        raise InvalidGraph("node ids must be contiguous starting at 0")
    nodes = sorted(nodes, key=lambda n: n.id)

    eids = sorted(e.id for e in edges)
    if eids != list(range(len(edges))):
        raise InvalidGraph("edge ids must be contiguous starting at 0")
    edges = sorted(edges, key=lambda e: e.id)

    node_ids = {n.id for n in nodes}
    seen_pairs: set[tuple[int, int]] = set()
    for e in edges:
        if e.start not in node_ids or e.end not in node_ids:
            raise DanglingEndpoint(f"edge {e.id} references missing node")
        if e.start == e.end:
            raise InvalidGraph(f"edge {e.id} is a self-loop")
        pair = (min(e.start, e.end), max(e.start, e.end))
        if pair in seen_pairs:
            raise InvalidGraph(f"edge {e.id} duplicates pair {pair}")
        seen_pairs.add(pair)
        if e.category not in categories:
            raise UnknownCategory(f"edge {e.id}: category {e.category!r} not configured")
        cat = categories[e.category]
        e.thickness = cat.thickness
        e.free_flow_speed = cat.free_flow_speed
        e.jam_speed = cat.jam_speed

    graph = RoadGraph(nodes, edges)
    graph.reset_traffic()
    return graph


def subset_graph(graph: RoadGraph, node_count: int, edge_count: int,
                 seed) -> RoadGraph:
    """Carve a connected subnetwork of ``node_count`` nodes and at most
    ``edge_count`` edges, relabelled to contiguous ids.

    Grows a breadth-first region from a seeded root, keeps the BFS tree
    edges (connectivity), then fills the remaining edge budget with the
    lowest-id internal edges.  Node openness and category data survive the
    relabelling; traffic state is reset.  ``seed`` is an integer or a
    numpy Generator; equal seeds give equal subsets.
    """
    if node_count < 1 or node_count > graph.node_count:
        raise Unsatisfiable(
            f"cannot pick {node_count} nodes from a {graph.node_count}-node graph"
        )
    if edge_count < node_count - 1 or edge_count > graph.edge_count:
        raise Unsatisfiable(
            f"no connected {node_count}-node subnetwork has {edge_count} edges"
        )
    rng = np.random.default_rng(seed)

    order = rng.permutation(graph.node_count)
    chosen: list[int] = []
    tree_edges: list[int] = []
    for root in order:
        root = int(root)
        chosen = [root]
        tree_edges = []
        in_set = {root}
        frontier = [root]
        while frontier and len(chosen) < node_count:
            nxt: list[int] = []
            for u in frontier:
                for v, eid in graph.adjacency[u]:
                    if v in in_set or len(chosen) >= node_count:
                        continue
                    in_set.add(v)
                    chosen.append(v)
                    tree_edges.append(eid)
                    nxt.append(v)
            frontier = nxt
        if len(chosen) == node_count:
            break
    if len(chosen) < node_count:
        raise Unsatisfiable(
            f"no connected region of {node_count} nodes exists in this graph"
        )

    in_set = set(chosen)
    tree_set = set(tree_edges)
    extras = [
        e.id
        for e in graph.edges
        if e.id not in tree_set and e.start in in_set and e.end in in_set
    ]
    extras.sort()
    keep_edges = sorted(tree_set) + extras[: edge_count - len(tree_set)]

    relabel = {old: new for new, old in enumerate(sorted(in_set))}
    new_nodes = []
    for old in sorted(in_set):
        n = graph.nodes[old]
        new_nodes.append(
            NodeRecord(
                id=relabel[old],
                lat=n.lat,
                lon=n.lon,
                category=n.category,
                open=n.open,
                gaussian_mean=n.gaussian_mean,
                gaussian_sigma=n.gaussian_sigma,
            )
        )
    new_edges = []
    for new_eid, old_eid in enumerate(sorted(keep_edges)):
        e = graph.edges[old_eid]
        new_edges.append(
            EdgeRecord(
                id=new_eid,
                start=relabel[e.start],
                end=relabel[e.end],
                distance=e.distance,
                category=e.category,
                thickness=e.thickness,
                free_flow_speed=e.free_flow_speed,
                jam_speed=e.jam_speed,
            )
        )
    sub = RoadGraph(new_nodes, new_edges)
    sub.reset_traffic()
    return sub
