"""Time-aware vehicle routing over a simulated road network.

The pieces compose in one direction: a road graph carries a tick-based
traffic simulation, the prediction layer turns simulated states into
timestamp-keyed travel-time tables, the routing layer searches those
tables, and the harness compares strategies and writes results.
"""

from .config import (
    CHOICE_WEIGHT_FLOOR,
    DEFAULT_CATEGORIES,
    RoadCategory,
    RunConfig,
    SimParams,
    load_categories,
    load_config,
    with_thresholds,
)
from .errors import DynRouteError
from .graph import (
    BACKWARD,
    FORWARD,
    EdgeRecord,
    NodeRecord,
    RoadGraph,
    VehicleRecord,
    build_graph,
    load_edges,
    load_nodes,
    subset_graph,
    write_edges,
    write_nodes,
)
from .harness import (
    ComparisonRecord,
    SweepCell,
    alpha_beta_sweep,
    average_difference,
    compare_pair,
    replay_table4,
    run_comparisons,
    sample_pairs,
    snapshot_edges,
    table4_graph,
    table4_timeline,
    write_aggregates_csv,
    write_comparisons_csv,
    write_comparisons_json,
    write_dot,
    write_events_csv,
    write_snapshot_csv,
    write_sweep_csv,
    write_sweep_json,
)
from .kernels import BACKEND
from .prediction import (
    EdgeFlowAggregate,
    aggregate_flows,
    edge_average_speed,
    edge_density,
    edge_travel_time,
    predict_timeline,
    refresh_edge_states,
    vehicle_speed,
)
from .routing import RouteResult, dynamic_dijkstra, experienced_time, static_dijkstra
from .simulation import (
    EXIT_EDGE,
    TickStats,
    WorldState,
    edge_choice_distribution,
    make_world,
    run,
    sample_external_arrivals,
    seed_vehicles,
    select_next_edge,
    step,
    transformation,
)
from .synth import synthetic_network
from .timeline import WeightTimeline, load_timeline, weights_at, write_timeline

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BACKWARD",
    "CHOICE_WEIGHT_FLOOR",
    "ComparisonRecord",
    "DEFAULT_CATEGORIES",
    "DynRouteError",
    "EXIT_EDGE",
    "EdgeFlowAggregate",
    "EdgeRecord",
    "FORWARD",
    "NodeRecord",
    "RoadCategory",
    "RoadGraph",
    "RouteResult",
    "RunConfig",
    "SimParams",
    "SweepCell",
    "TickStats",
    "VehicleRecord",
    "WeightTimeline",
    "WorldState",
    "aggregate_flows",
    "alpha_beta_sweep",
    "average_difference",
    "build_graph",
    "compare_pair",
    "dynamic_dijkstra",
    "edge_average_speed",
    "edge_choice_distribution",
    "edge_density",
    "edge_travel_time",
    "experienced_time",
    "load_categories",
    "load_config",
    "load_edges",
    "load_nodes",
    "load_timeline",
    "make_world",
    "predict_timeline",
    "refresh_edge_states",
    "replay_table4",
    "run",
    "run_comparisons",
    "sample_external_arrivals",
    "sample_pairs",
    "seed_vehicles",
    "select_next_edge",
    "snapshot_edges",
    "static_dijkstra",
    "step",
    "subset_graph",
    "synthetic_network",
    "table4_graph",
    "table4_timeline",
    "transformation",
    "vehicle_speed",
    "weights_at",
    "with_thresholds",
    "write_aggregates_csv",
    "write_comparisons_csv",
    "write_comparisons_json",
    "write_dot",
    "write_edges",
    "write_events_csv",
    "write_nodes",
    "write_snapshot_csv",
    "write_sweep_csv",
    "write_sweep_json",
    "write_timeline",
]
