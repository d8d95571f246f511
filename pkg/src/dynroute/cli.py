"""Command-line front end.

Subcommands: simulate, predict, route, compare, sweep, replay-table4.
Shared flags: --seed, --config, --format {csv,json,dot}, --out DIR.
Exit codes: 0 success, 1 bad data, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import RunConfig, load_config
from .errors import DynRouteError
from .graph import build_graph, load_edges, load_nodes
from .harness import (
    alpha_beta_sweep,
    average_difference,
    replay_table4,
    run_comparisons,
    sample_pairs,
    snapshot_edges,
    table4_graph,
    write_aggregates_csv,
    write_comparisons_csv,
    write_comparisons_json,
    write_dot,
    write_events_csv,
    write_snapshot_csv,
    write_sweep_csv,
    write_sweep_json,
)
from .prediction import aggregate_flows, predict_timeline, refresh_edge_states
from .routing import dynamic_dijkstra, experienced_time, static_dijkstra
from .simulation import seed_vehicles, step
from .synth import synthetic_network
from .timeline import load_timeline, write_timeline


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    shared.add_argument("--config", type=Path, default=None,
                        help="JSON run config overriding the defaults")
    shared.add_argument("--format", choices=["csv", "json", "dot"], default="csv",
                        help="output file format (default csv)")
    shared.add_argument("--out", type=Path, default=Path("."),
                        help="directory for output files (default .)")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("--nodes", type=Path, help="node CSV file")
    graph_in.add_argument("--edges", type=Path, help="edge CSV file")
    graph_in.add_argument("--synthetic", metavar="N,E",
                          help="generate N nodes / E edges instead of reading files")

    parser = argparse.ArgumentParser(
        prog="dynroute",
        description="Traffic simulation, travel-time forecasting and "
                    "time-aware routing over road networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[shared, graph_in],
                       help="run the traffic simulation, write events, "
                            "snapshots and flow aggregates")
    p.add_argument("--vehicles", type=int, default=None,
                   help="vehicles to place initially (default from config)")
    p.add_argument("--ticks", type=int, default=None,
                   help="ticks to run (default from config horizon)")

    p = sub.add_parser("predict", parents=[shared, graph_in],
                       help="forecast travel times and write a timeline file")
    p.add_argument("--vehicles", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None,
                   help="seconds to forecast (default from config)")

    p = sub.add_parser("route", parents=[shared],
                       help="route one pair over a timeline file")
    p.add_argument("--timeline", type=Path, required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--destination", type=int, required=True)
    p.add_argument("--depart", type=float, default=0.0,
                   help="departure time for the frozen plan and hop pricing")
    p.add_argument("--static", action="store_true",
                   help="freeze weights at the departure time instead of "
                        "re-reading them per hop")

    p = sub.add_parser("compare", parents=[shared, graph_in],
                       help="time-aware vs departure-frozen routes over sampled "
                            "pairs, on a timeline file or a live forecast")
    p.add_argument("--timeline", type=Path, default=None,
                   help="timeline file; omitted means simulate and forecast one")
    p.add_argument("--pairs", type=int, default=100,
                   help="number of sampled pairs (default 100)")
    p.add_argument("--vehicles", type=int, default=None,
                   help="vehicles for the live forecast (default from config)")
    p.add_argument("--horizon", type=int, default=None,
                   help="seconds to forecast when no timeline file is given")

    p = sub.add_parser("sweep", parents=[shared, graph_in],
                       help="grid of density thresholds, one forecast per cell")
    p.add_argument("--alphas", default="0.2,0.4,0.6",
                   help="comma list of alpha values")
    p.add_argument("--betas", default="0.5,0.7,0.9",
                   help="comma list of beta values")
    p.add_argument("--pairs", type=int, default=50)
    p.add_argument("--vehicles", type=int, default=None)
    p.add_argument("--horizon", type=int, default=None)

    sub.add_parser("replay-table4", parents=[shared],
                   help="route the bundled ten-node benchmark and print both strategies")
    return parser


def _run_config(args) -> RunConfig:
    if args.config is not None:
        return load_config(args.config)
    return RunConfig()


def _load_graph(args, cfg: RunConfig):
    if args.synthetic:
        try:
            n, e = (int(x) for x in args.synthetic.split(","))
        except ValueError:
            raise DynRouteError(f"--synthetic wants N,E, got {args.synthetic!r}")
        return synthetic_network(n, e, seed=args.seed, categories=cfg.categories)
    if args.nodes and args.edges:
        return build_graph(load_nodes(args.nodes), load_edges(args.edges),
                           cfg.categories)
    if args.nodes or args.edges:
        raise DynRouteError("--nodes and --edges must be given together")
    return table4_graph()


def _make_world(args, cfg: RunConfig, vehicles: int):
    graph = _load_graph(args, cfg)
    return seed_vehicles(graph, vehicles, args.seed, cfg.params)


def _print_route(timeline, result, depart: float, experienced: float | None,
                 fmt: str, out: Path) -> None:
    hops = []
    t = depart
    for u, v in zip(result.path, result.path[1:]):
        w = timeline.arc_weight(u, v, t)
        hops.append({"edge": f"{u}-{v}", "depart": t, "weight": w})
        t += w
    payload = {
        "path": result.path,
        "departure_times": result.departure_times,
        "total_time": result.total_time,
        "hops": hops,
    }
    if experienced is not None:
        payload["experienced_time"] = experienced
    if fmt == "json":
        out.mkdir(parents=True, exist_ok=True)
        target = out / "route.json"
        with open(target, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {target}")
    print("path: " + " -> ".join(str(n) for n in result.path))
    for hop in hops:
        print(f"hop: {hop['edge']} depart={hop['depart']} weight={hop['weight']}")
    print(f"total_time: {result.total_time}")
    if experienced is not None:
        print(f"experienced_time: {experienced}")


def _cmd_simulate(args) -> int:
    cfg = _run_config(args)
    n_vehicles = args.vehicles if args.vehicles is not None else cfg.vehicles
    ticks = args.ticks if args.ticks is not None else cfg.horizon
    world = _make_world(args, cfg, n_vehicles)
    snapshot_rows = []
    aggregate_rows = []
    for _ in range(ticks):
        step(world)
        refresh_edge_states(world)
        snapshot_rows.extend(snapshot_edges(world))
        aggregate_rows.extend(aggregate_flows(world))
    args.out.mkdir(parents=True, exist_ok=True)
    if args.format == "dot":
        target = args.out / "network.dot"
        write_dot(target, world.graph)
        print(f"wrote {target}")
    else:
        ev = args.out / "events.csv"
        write_events_csv(ev, world.events)
        snap = args.out / "snapshots.csv"
        write_snapshot_csv(snap, snapshot_rows)
        agg = args.out / "aggregates.csv"
        write_aggregates_csv(agg, aggregate_rows)
        print(f"wrote {ev}")
        print(f"wrote {snap}")
        print(f"wrote {agg}")
    total_spawns = sum(s.arrivals for s in world.tick_stats)
    total_exits = sum(s.exits for s in world.tick_stats)
    print(f"ticks: {ticks}  spawned: {total_spawns}  exited: {total_exits}  "
          f"active: {len(world.active)}")
    return 0


def _cmd_predict(args) -> int:
    cfg = _run_config(args)
    n_vehicles = args.vehicles if args.vehicles is not None else cfg.vehicles
    horizon = args.horizon if args.horizon is not None else cfg.horizon
    world = _make_world(args, cfg, n_vehicles)
    timeline = predict_timeline(world, horizon)
    args.out.mkdir(parents=True, exist_ok=True)
    if args.format == "dot":
        target = args.out / "network.dot"
        write_dot(target, world.graph)
    else:
        target = args.out / "predicted.timeline"
        write_timeline(target, timeline)
    print(f"wrote {target}")
    print(f"keys: {len(timeline.keys)}  arcs: {len(timeline.arcs)}")
    return 0


def _cmd_route(args) -> int:
    timeline = load_timeline(args.timeline)
    if args.static:
        result = static_dijkstra(timeline.matrix_at(args.depart),
                                 args.source, args.destination)
        experienced = experienced_time(timeline, result.path, args.depart)
    else:
        result = dynamic_dijkstra(timeline, args.source, args.destination)
        experienced = None
    depart = args.depart if args.static else 0.0
    _print_route(timeline, result, depart, experienced, args.format, args.out)
    return 0


def _cmd_compare(args) -> int:
    if args.timeline is not None:
        timeline = load_timeline(args.timeline)
    else:
        cfg = _run_config(args)
        n_vehicles = args.vehicles if args.vehicles is not None else cfg.vehicles
        horizon = args.horizon if args.horizon is not None else cfg.horizon
        world = _make_world(args, cfg, n_vehicles)
        timeline = predict_timeline(world, horizon)
    rng = np.random.default_rng(args.seed)
    pairs = sample_pairs(timeline.node_count, args.pairs, rng)
    records, skipped = run_comparisons(timeline, pairs)
    args.out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        target = args.out / "comparisons.json"
        write_comparisons_json(target, records)
    else:
        target = args.out / "comparisons.csv"
        write_comparisons_csv(target, records)
    print(f"wrote {target}")
    if records:
        print(f"pairs: {len(records)}  skipped: {len(skipped)}  "
              f"mean_delta: {average_difference(records)}")
    else:
        print(f"pairs: 0  skipped: {len(skipped)}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _run_config(args)
    n_vehicles = args.vehicles if args.vehicles is not None else cfg.vehicles
    horizon = args.horizon if args.horizon is not None else cfg.horizon
    world = _make_world(args, cfg, n_vehicles)
    alphas = [float(x) for x in args.alphas.split(",") if x]
    betas = [float(x) for x in args.betas.split(",") if x]
    for alpha in alphas:
        for beta in betas:
            if not 0 < alpha < beta:
                print(f"skipping alpha={alpha} beta={beta}: "
                      f"thresholds need 0 < alpha < beta", file=sys.stderr)
    pair_rng = np.random.default_rng(args.seed + 1)
    pairs = sample_pairs(world.graph.node_count, args.pairs, pair_rng)
    cells = alpha_beta_sweep(world, alphas, betas, pairs, horizon)
    if not cells:
        raise DynRouteError("every threshold combination was rejected, "
                            "nothing to sweep")
    args.out.mkdir(parents=True, exist_ok=True)
    if args.format == "json":
        target = args.out / "sweep.json"
        write_sweep_json(target, cells)
    else:
        target = args.out / "sweep.csv"
        write_sweep_csv(target, cells)
    print(f"wrote {target}")
    for c in cells:
        print(f"alpha={c.alpha} beta={c.beta} lambda={c.lam} n={c.n}")
    return 0


def _cmd_replay(args) -> int:
    report = replay_table4()
    print("dynamic path: " + " -> ".join(str(n) for n in report["dynamic_path"]))
    print(f"dynamic total: {report['dynamic_total']}")
    print("static path: " + " -> ".join(str(n) for n in report["static_path"]))
    print(f"static planned total: {report['static_planned_total']}")
    print(f"static experienced total: {report['static_experienced_total']}")
    print(f"improvement: {report['improvement']:.4f}")
    if args.format == "json":
        args.out.mkdir(parents=True, exist_ok=True)
        target = args.out / "replay.json"
        with open(target, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {target}")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "predict": _cmd_predict,
    "route": _cmd_route,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
    "replay-table4": _cmd_replay,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DynRouteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
