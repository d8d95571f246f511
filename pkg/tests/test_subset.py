import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynroute.errors import InvalidGraph, Unsatisfiable
from dynroute.graph import subset_graph
from dynroute.synth import synthetic_network


def _connected(graph):
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v, _ in graph.adjacency[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == graph.node_count


def test_subset_sizes_and_connectivity():
    net = synthetic_network(60, 110, seed=4)
    sub = subset_graph(net, 20, 30, 1)
    assert sub.node_count == 20
    assert sub.edge_count <= 30
    assert sub.edge_count >= 19  # spanning tree at minimum
    assert _connected(sub)
    assert [n.id for n in sub.nodes] == list(range(20))
    assert [e.id for e in sub.edges] == list(range(sub.edge_count))


def test_subset_deterministic():
    net = synthetic_network(60, 110, seed=4)
    a = subset_graph(net, 20, 30, 7)
    b = subset_graph(net, 20, 30, 7)
    assert [(e.start, e.end, e.distance) for e in a.edges] == \
           [(e.start, e.end, e.distance) for e in b.edges]
    assert [(n.lat, n.lon, n.open) for n in a.nodes] == \
           [(n.lat, n.lon, n.open) for n in b.nodes]


def test_subset_accepts_generator_seed():
    net = synthetic_network(60, 110, seed=4)
    a = subset_graph(net, 15, 20, np.random.default_rng(5))
    b = subset_graph(net, 15, 20, np.random.default_rng(5))
    assert [(e.start, e.end) for e in a.edges] == [(e.start, e.end) for e in b.edges]


def test_subset_preserves_node_data():
    net = synthetic_network(60, 110, seed=4, open_fraction=0.3)
    sub = subset_graph(net, 25, 40, 2)
    # relabelled nodes keep their coordinates and openness
    by_pos = {(n.lat, n.lon): n for n in net.nodes}
    for n in sub.nodes:
        orig = by_pos[(n.lat, n.lon)]
        assert n.open == orig.open
        assert n.gaussian_mean == orig.gaussian_mean
        assert n.category == orig.category


def test_subset_traffic_reset():
    net = synthetic_network(30, 45, seed=4)
    net.edges[0].density[0] = 0.7
    sub = subset_graph(net, 10, 12, 3)
    for e in sub.edges:
        assert e.density == [0.0, 0.0]
        assert e.vehicles == [[], []]


def test_subset_whole_graph():
    net = synthetic_network(30, 45, seed=4)
    sub = subset_graph(net, 30, 45, 0)
    assert sub.node_count == 30
    assert sub.edge_count == 45


@pytest.mark.parametrize("nodes,edges", [(0, 5), (31, 40), (10, 8), (10, 46)])
def test_subset_unsatisfiable_bounds(nodes, edges):
    net = synthetic_network(30, 45, seed=4)
    with pytest.raises(Unsatisfiable):
        subset_graph(net, nodes, edges, 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(2, 25))
def test_subset_always_connected(seed, node_count):
    net = synthetic_network(30, 60, seed=99)
    sub = subset_graph(net, node_count, min(60, node_count * 2), seed)
    assert sub.node_count == node_count
    assert _connected(sub)


def test_synthetic_validation():
    with pytest.raises(InvalidGraph):
        synthetic_network(1, 0)
    with pytest.raises(InvalidGraph):
        synthetic_network(5, 3)  # below spanning tree
    with pytest.raises(InvalidGraph):
        synthetic_network(5, 11)  # above complete graph


def test_synthetic_open_fraction():
    net = synthetic_network(40, 60, seed=6, open_fraction=0.25)
    n_open = len(net.open_nodes())
    assert n_open == int(40 * 0.25)
    for n in net.open_nodes():
        assert n.gaussian_mean > 0
        assert 0 < n.gaussian_sigma <= 3
