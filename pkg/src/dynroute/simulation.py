"""Tick-based traffic simulation.

Each tick: refresh edge states, advance vehicles, route the ones that
reached a junction, inject outside arrivals at open nodes, then advance the
clock.  All randomness flows through the world's single generator and all
iteration is in id order, so a run is fully determined by its seed.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field

import numpy as np

from .config import CHOICE_WEIGHT_FLOOR, SimParams
from .errors import DeadEnd, EmptyGraph, InvalidThresholds, MalformedRow
from .graph import FORWARD, NodeRecord, RoadGraph, VehicleRecord
from .prediction import refresh_edge_states

# Sentinel edge id meaning "leave the network here".
EXIT_EDGE = -1

# Distance slack treated as edge completion, absorbs float drift.
_ARRIVE_EPS = 1e-9


@dataclass
class TickStats:
    """Per-tick bookkeeping: outside arrivals, exits, vehicles still active."""

    tick: int
    arrivals: int
    exits: int
    active: int


@dataclass
class WorldState:
    """Entire mutable simulation state.

    ``vehicles`` maps id to record and keeps exited vehicles; ``active``
    lists the ids still in the network, ascending.  ``events`` accumulates
    (tick, kind, vehicle_id, node_or_edge_id) rows with kinds
    ``external_arrival``, ``edge_enter``, ``node_arrival``, ``exit``.
    """

    graph: RoadGraph
    params: SimParams
    rng: np.random.Generator
    seed: int | None = None
    vehicles: dict[int, VehicleRecord] = field(default_factory=dict)
    active: list[int] = field(default_factory=list)
    clock: float = 0.0
    tick: int = 0
    next_vehicle_id: int = 0
    tick_stats: list[TickStats] = field(default_factory=list)
    events: list[tuple[int, str, int, int]] = field(default_factory=list)

    def clone(self) -> "WorldState":
        """Independent deep copy; the generator state is copied too, so the
        clone replays exactly the randomness the original would see."""
        return copy.deepcopy(self)


def make_world(graph: RoadGraph, params: SimParams | None = None,
               seed=None) -> WorldState:
    """Fresh empty world over ``graph`` with cleared traffic state.

    ``seed`` is an integer or a numpy Generator.
    """
    if params is None:
        params = SimParams()
    graph.reset_traffic()
    if isinstance(seed, np.random.Generator):
        return WorldState(graph=graph, params=params, rng=seed)
    return WorldState(graph=graph, params=params,
                      rng=np.random.default_rng(seed), seed=seed)


def seed_vehicles(graph: RoadGraph, n: int, rng,
                  params: SimParams | None = None) -> WorldState:
    """World at time 0 with ``n`` vehicles scattered uniformly over
    directed edge slots.

    Each vehicle gets a uniform residual travel time in [0, distance /
    free-flow speed) and the matching remaining distance.  Edge states are
    refreshed afterwards so densities reflect the placement.  ``rng`` is an
    integer seed or a numpy Generator; equal seeds give equal worlds.
    """
    world = make_world(graph, params, seed=rng)
    if n == 0:
        refresh_edge_states(world)
        return world
    if graph.edge_count == 0:
        raise EmptyGraph("cannot place vehicles on a graph with no edges")
    params = world.params
    for _ in range(n):
        eid = int(world.rng.integers(graph.edge_count))
        direction = int(world.rng.integers(2))
        edge = graph.edges[eid]
        ttc = float(world.rng.uniform(0.0, edge.distance / edge.free_flow_speed))
        vid = world.next_vehicle_id
        world.next_vehicle_id += 1
        world.vehicles[vid] = VehicleRecord(
            id=vid,
            state="on_edge",
            edge_id=eid,
            direction=direction,
            thickness=params.vehicle_thickness,
            max_speed=params.vehicle_max_speed,
            current_speed=edge.free_flow_speed,
            time_to_complete=ttc,
            remaining_distance=ttc * edge.free_flow_speed,
        )
        edge.vehicles[direction].append(vid)
        world.active.append(vid)
    refresh_edge_states(world)
    return world


def sample_external_arrivals(node: NodeRecord, rng: np.random.Generator,
                             chain: bool = True) -> int:
    """Number of vehicles arriving from outside at an open node this tick.

    A normal draw around the node's mean, rounded to the nearest integer
    (ties to even) and clamped at zero.  With ``chain`` the realised count
    becomes the node's next mean, so busy ticks beget busy ticks.  The
    node's running external arrival counter is advanced either way.
    """
    if not node.open:
        return 0
    sigma = node.gaussian_sigma
    if not 0 < sigma <= 3:
        raise MalformedRow(
            f"node {node.id}: arrival sigma must lie in (0, 3], got {sigma}"
        )
    draw = rng.normal(node.gaussian_mean, sigma)
    count = max(int(round(float(draw))), 0)
    if chain:
        node.gaussian_mean = float(count)
    node.external_vehicle_count += count
    return count


def transformation(traffic: float, alpha: float, beta: float) -> float:
    """Squashes a density into [0, 1]: (x / beta)^2 below ``beta``, 1 above.

    ``alpha`` and ``beta`` delimit the free-flow, normal and jam regimes
    the value is read against, so the pair is validated here too.
    """
    if not 0 < alpha < beta:
        raise InvalidThresholds(
            f"thresholds must satisfy 0 < alpha < beta, got alpha={alpha}, beta={beta}"
        )
    if traffic > beta:
        return 1.0
    return (traffic / beta) ** 2


def edge_choice_distribution(graph: RoadGraph, node_id: int, alpha: float,
                             beta: float, inverse: bool = False):
    """Choice distribution at a junction: (edge_id, direction, probability)
    triples, plus an (EXIT_EDGE, -1, p) entry when the node is open.

    Each incident edge is weighted by the transformed density of the
    direction leading away from the node (vehicles drift toward traffic),
    floored so every option stays reachable.  ``inverse`` flips the
    weighting to favour quiet edges instead.
    """
    node = graph.nodes[node_id]
    eps = CHOICE_WEIGHT_FLOOR

    options: list[tuple[int, int]] = []
    raw: list[float] = []
    for _, eid in graph.adjacency[node_id]:
        edge = graph.edges[eid]
        direction = edge.direction_from(node_id)
        raw.append(transformation(edge.density[direction], alpha, beta))
        options.append((eid, direction))
    if node.open:
        raw.append(transformation(eps, alpha, beta))
        options.append((EXIT_EDGE, -1))
    if not options:
        raise DeadEnd(f"node {node_id} has no incident edges and is closed")
    if inverse:
        weights = [1.0 / (eps + r) for r in raw]
    else:
        weights = [r + eps for r in raw]
    total = sum(weights)
    return [(eid, d, w / total) for (eid, d), w in zip(options, weights)]


def select_next_edge(graph: RoadGraph, node_id: int, alpha: float, beta: float,
                     rng: np.random.Generator, inverse: bool = False) -> tuple[int, int]:
    """Sample the junction choice distribution; returns (edge_id, direction),
    with edge_id == EXIT_EDGE meaning the vehicle leaves the network."""
    dist = edge_choice_distribution(graph, node_id, alpha, beta, inverse)
    r = float(rng.random())
    acc = 0.0
    for eid, direction, p in dist:
        acc += p
        if r < acc:
            return eid, direction
    return dist[-1][0], dist[-1][1]


def _enter_edge(world: WorldState, vehicle: VehicleRecord, eid: int,
                direction: int) -> None:
    edge = world.graph.edges[eid]
    vehicle.state = "on_edge"
    vehicle.edge_id = eid
    vehicle.direction = direction
    vehicle.node_id = -1
    vehicle.remaining_distance = edge.distance
    # the stored mean of clamped speeds can drift an ulp out of the band
    entry_speed = min(max(edge.mean_speed[direction], edge.jam_speed),
                      edge.free_flow_speed)
    vehicle.current_speed = min(entry_speed, vehicle.max_speed)
    vehicle.time_to_complete = edge.travel_time[direction]
    edge.vehicles[direction].append(vehicle.id)
    world.events.append((world.tick, "edge_enter", vehicle.id, eid))


def step(world: WorldState) -> TickStats:
    """Advance the world one tick; returns the tick's stats row.

    Order inside a tick: refresh edge states, move vehicles (arrivals at
    junctions included), route vehicles standing at junctions, inject
    outside arrivals at open nodes, then advance the clock.
    """
    graph = world.graph
    params = world.params
    dt = params.dt
    arrivals = 0
    exits = 0

    refresh_edge_states(world)

    # Movement: everyone on an edge advances at this tick's speed.
    for vid in world.active:
        v = world.vehicles[vid]
        if v.state != "on_edge":
            continue
        v.remaining_distance -= v.current_speed * dt
        if v.remaining_distance <= _ARRIVE_EPS:
            edge = graph.edges[v.edge_id]
            node_id = edge.end if v.direction == FORWARD else edge.start
            edge.vehicles[v.direction].remove(vid)
            v.state = "at_node"
            v.node_id = node_id
            v.edge_id = -1
            v.remaining_distance = 0.0
            v.time_to_complete = 0.0
            world.events.append((world.tick, "node_arrival", vid, node_id))
        else:
            v.time_to_complete = v.remaining_distance / v.current_speed

    # Routing: everyone standing at a junction picks the next edge or leaves.
    still_active: list[int] = []
    for vid in world.active:
        v = world.vehicles[vid]
        if v.state == "at_node":
            eid, direction = select_next_edge(graph, v.node_id, params.alpha,
                                              params.beta, world.rng,
                                              params.inverse_choice)
            if eid == EXIT_EDGE:
                v.state = "exited"
                v.edge_id = EXIT_EDGE
                world.events.append((world.tick, "exit", vid, v.node_id))
                exits += 1
                continue
            _enter_edge(world, v, eid, direction)
        still_active.append(vid)

    # Outside arrivals enter at open nodes and immediately pick a road.
    for node in graph.nodes:
        if not node.open:
            continue
        count = sample_external_arrivals(node, world.rng, chain=True)
        arrivals += count
        for _ in range(count):
            vid = world.next_vehicle_id
            world.next_vehicle_id += 1
            v = VehicleRecord(id=vid, state="at_node", node_id=node.id,
                              thickness=params.vehicle_thickness,
                              max_speed=params.vehicle_max_speed)
            world.vehicles[vid] = v
            world.events.append((world.tick, "external_arrival", vid, node.id))
            eid, direction = select_next_edge(graph, node.id, params.alpha,
                                              params.beta, world.rng,
                                              params.inverse_choice)
            if eid == EXIT_EDGE:
                v.state = "exited"
                v.edge_id = EXIT_EDGE
                world.events.append((world.tick, "exit", vid, node.id))
                exits += 1
                continue
            _enter_edge(world, v, eid, direction)
            still_active.append(vid)

    world.active = still_active
    world.clock += dt
    world.tick += 1
    stats = TickStats(tick=world.tick, arrivals=arrivals, exits=exits,
                      active=len(world.active))
    world.tick_stats.append(stats)
    return stats


def run(world: WorldState, ticks: int) -> list[TickStats]:
    """Step ``ticks`` times; returns the stats rows appended."""
    start = len(world.tick_stats)
    for _ in range(ticks):
        step(world)
    return world.tick_stats[start:]
