"""Traffic state derivation and travel-time forecasting.

The per-edge pipeline runs density -> speed -> travel time each tick, per
direction, from the vehicles currently occupying the edge.
``predict_timeline`` rolls a cloned world forward and records the per-tick
travel times as a timestamp-keyed table for the routing searches.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentMembership, InvalidThresholds, Unsatisfiable, ZeroSpeed
from .graph import BACKWARD, FORWARD, EdgeRecord
from .timeline import WeightTimeline


def edge_density(edge: EdgeRecord, direction: int, vehicles) -> float:
    """Fraction of the directed lane area covered by vehicles.

    Summed vehicle thickness over edge distance, scaled by the edge
    thickness.  ``vehicles`` is the world's id -> record mapping; every
    occupant listed on the direction is checked to actually be there.
    """
    total_thickness = 0.0
    for vid in edge.vehicles[direction]:
        v = vehicles.get(vid)
        if v is None or v.state != "on_edge" or v.edge_id != edge.id \
                or v.direction != direction:
            raise InconsistentMembership(
                f"vehicle {vid} listed on edge {edge.id} direction "
                f"{direction} but its record disagrees"
            )
        total_thickness += v.thickness
    return (total_thickness / edge.distance) * edge.thickness


def vehicle_speed(density: float, edge: EdgeRecord, alpha: float, beta: float,
                  monotone: bool = False) -> float:
    """Speed of one vehicle on an edge at the given density.

    Up to ``alpha`` the speed falls linearly from free-flow toward jam with
    rising density; above ``beta`` it is the jam speed.  Between the two the
    default model keeps the free-flow value, while ``monotone`` extends the
    linear ramp so speed never rises with density.  The result is clamped
    to [jam, free-flow].
    """
    if not 0 < alpha < beta:
        raise InvalidThresholds(
            f"thresholds must satisfy 0 < alpha < beta, got alpha={alpha}, beta={beta}"
        )
    vf = edge.free_flow_speed
    vj = edge.jam_speed
    speed = vf
    if density <= alpha or (monotone and density <= beta):
        speed = (vf - vj) * (1.0 - density) + vj
    elif density > beta:
        speed = vj
    return min(max(speed, vj), vf)


def edge_average_speed(edge: EdgeRecord, direction: int, vehicle_speeds) -> float:
    """Mean of this tick's occupant speeds; free-flow speed when empty."""
    speeds = list(vehicle_speeds)
    if not speeds:
        return edge.free_flow_speed
    return sum(speeds) / len(speeds)


def edge_travel_time(edge: EdgeRecord, mean_speed: float) -> float:
    """Seconds to traverse the edge at the given mean speed."""
    if mean_speed <= 0:
        raise ZeroSpeed(f"edge {edge.id} has nonpositive mean speed {mean_speed}")
    return edge.distance / mean_speed


def refresh_edge_states(world) -> None:
    """Recompute densities, occupant speeds, mean speeds and travel times
    for every edge direction from the current vehicle placement."""
    params = world.params
    vehicles = world.vehicles
    for edge in world.graph.edges:
        for direction in (FORWARD, BACKWARD):
            density = edge_density(edge, direction, vehicles)
            edge.density[direction] = density
            model_speed = vehicle_speed(density, edge, params.alpha, params.beta,
                                        params.monotone_speed)
            speeds = []
            for vid in edge.vehicles[direction]:
                v = vehicles[vid]
                v.current_speed = min(model_speed, v.max_speed)
                speeds.append(v.current_speed)
            mean = edge_average_speed(edge, direction, speeds)
            edge.mean_speed[direction] = mean
            edge.travel_time[direction] = edge_travel_time(edge, mean)


@dataclass(frozen=True)
class EdgeFlowAggregate:
    """Per-direction traffic summary for one edge at one tick.

    ``raw_density`` is vehicles per meter; ``flow`` is raw density times
    mean speed (vehicles per second past a point).
    """

    edge_id: int
    direction: int
    tick: int
    vehicle_count: int
    density: float
    raw_density: float
    mean_speed: float
    flow: float
    travel_time: float


def aggregate_flows(world) -> list[EdgeFlowAggregate]:
    """Snapshot every edge direction of the world as flow aggregates."""
    out = []
    for edge in world.graph.edges:
        for direction in (FORWARD, BACKWARD):
            count = len(edge.vehicles[direction])
            raw = count / edge.distance
            u = edge.mean_speed[direction]
            out.append(
                EdgeFlowAggregate(
                    edge_id=edge.id,
                    direction=direction,
                    tick=world.tick,
                    vehicle_count=count,
                    density=edge.density[direction],
                    raw_density=raw,
                    mean_speed=u,
                    flow=raw * u,
                    travel_time=edge.travel_time[direction],
                )
            )
    return out


def predict_timeline(world, horizon: int) -> WeightTimeline:
    """Forecast directional travel times ``horizon`` seconds ahead.

    Clones the world (leaving the input untouched), steps the clone one
    tick at a time and records the refreshed travel times at every clock
    value from 0 through ``horizon`` inclusive.  ``horizon`` must be a
    nonnegative multiple of the tick length, and the tick length a whole
    number of seconds, because table keys are integer timestamps.
    """
    from .simulation import step

    dt = world.params.dt
    if dt != int(dt):
        raise Unsatisfiable(f"forecasting needs a whole-number tick length, got dt={dt}")
    dt = int(dt)
    if horizon < 0 or horizon % dt != 0:
        raise Unsatisfiable(
            f"horizon must be a nonnegative multiple of dt={dt}, got {horizon}"
        )
    steps = horizon // dt
    clone = world.clone()

    arcs: list[tuple[int, int]] = []
    for e in clone.graph.edges:
        arcs.append((e.start, e.end))
        arcs.append((e.end, e.start))
    order = sorted(range(len(arcs)), key=lambda i: arcs[i])
    arcs = [arcs[i] for i in order]

    def record_row():
        row = []
        for e in clone.graph.edges:
            row.append(e.travel_time[FORWARD])
            row.append(e.travel_time[BACKWARD])
        return [row[i] for i in order]

    refresh_edge_states(clone)
    keys = [0]
    rows = [record_row()]
    for _ in range(steps):
        step(clone)
        refresh_edge_states(clone)
        keys.append(int(clone.clock))
        rows.append(record_row())
    return WeightTimeline(keys, arcs, np.asarray(rows, dtype=np.float64))
