"""Seeded synthetic road networks for experiments and tests.

Nodes are scattered uniformly in a small lat/lon box, joined by a minimum
spanning tree for connectivity, then densified with the shortest remaining
pairs.  Distances are planar-approximated from degrees at 111 km per
degree.  A fraction of nodes is opened to outside traffic with randomised
arrival parameters.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_CATEGORIES, RoadCategory
from .errors import InvalidGraph
from .graph import EdgeRecord, NodeRecord, RoadGraph, build_graph

METERS_PER_DEGREE = 111000.0
MIN_EDGE_METERS = 50.0


def synthetic_network(
    node_count: int,
    edge_count: int,
    seed: int | None = None,
    open_fraction: float = 0.15,
    box: tuple[float, float, float, float] = (0.0, 0.0, 0.02, 0.02),
    categories: dict[str, RoadCategory] | None = None,
) -> RoadGraph:
    """Generate a connected network with the requested sizes.

    Edge categories are assigned by length terciles: the shortest third is
    local, the middle arterial, the longest highway.  Open nodes draw an
    arrival mean in [0.5, 2.0) and sigma in [0.5, 1.5).
    """
    if node_count < 2:
        raise InvalidGraph("need at least two nodes")
    max_edges = node_count * (node_count - 1) // 2
    if not node_count - 1 <= edge_count <= max_edges:
        raise InvalidGraph(
            f"edge count must lie in [{node_count - 1}, {max_edges}] "
            f"for {node_count} nodes, got {edge_count}"
        )
    if categories is None:
        categories = DEFAULT_CATEGORIES

    rng = np.random.default_rng(seed)
    lat0, lon0, lat1, lon1 = box
    lat = rng.uniform(lat0, lat1, node_count)
    lon = rng.uniform(lon0, lon1, node_count)

    diff_lat = lat[:, None] - lat[None, :]
    diff_lon = lon[:, None] - lon[None, :]
    dist = np.hypot(diff_lat, diff_lon) * METERS_PER_DEGREE

    # Prim's tree over the complete euclidean graph keeps it connected.
    in_tree = np.zeros(node_count, dtype=bool)
    best = np.full(node_count, np.inf)
    best_from = np.zeros(node_count, dtype=np.int64)
    in_tree[0] = True
    best = dist[0].copy()
    best[0] = np.inf
    pairs: set[tuple[int, int]] = set()
    for _ in range(node_count - 1):
        u = int(np.argmin(best))
        f = int(best_from[u])
        pairs.add((min(f, u), max(f, u)))
        in_tree[u] = True
        best[u] = np.inf
        closer = dist[u] < best
        closer &= ~in_tree
        best[closer] = dist[u][closer]
        best_from[closer] = u

    # Densify with the globally shortest pairs not yet used.
    need = edge_count - len(pairs)
    if need > 0:
        iu, ju = np.triu_indices(node_count, k=1)
        order = np.argsort(dist[iu, ju], kind="stable")
        for idx in order:
            if need == 0:
                break
            pair = (int(iu[idx]), int(ju[idx]))
            if pair in pairs:
                continue
            pairs.add(pair)
            need -= 1

    sorted_pairs = sorted(pairs)
    lengths = np.array(
        [max(dist[u, v], MIN_EDGE_METERS) for u, v in sorted_pairs]
    )
    t1, t2 = np.quantile(lengths, [1 / 3, 2 / 3])
    names = sorted(categories)
    if {"local", "arterial", "highway"} <= set(names):
        by_tercile = ["local", "arterial", "highway"]
    else:
        by_tercile = (names * 3)[:3]

    edges = []
    for eid, ((u, v), length) in enumerate(zip(sorted_pairs, lengths)):
        if length <= t1:
            cat = by_tercile[0]
        elif length <= t2:
            cat = by_tercile[1]
        else:
            cat = by_tercile[2]
        edges.append(
            EdgeRecord(id=eid, start=u, end=v, distance=float(length), category=cat)
        )

    open_count = int(round(open_fraction * node_count))
    open_ids = set(
        int(i) for i in rng.choice(node_count, size=open_count, replace=False)
    )
    nodes = []
    for nid in range(node_count):
        is_open = nid in open_ids
        nodes.append(
            NodeRecord(
                id=nid,
                lat=float(lat[nid]),
                lon=float(lon[nid]),
                category="junction",
                open=is_open,
                gaussian_mean=float(rng.uniform(0.5, 2.0)) if is_open else 0.0,
                gaussian_sigma=float(rng.uniform(0.5, 1.5)) if is_open else 1.0,
            )
        )
    return build_graph(nodes, edges, categories)
