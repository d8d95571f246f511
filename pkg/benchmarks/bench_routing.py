"""Route the same workload through both kernel lanes and report the speedup.

Builds a forecast timeline over a synthetic network, then runs the
time-aware and frozen searches for a batch of sampled pairs on the compiled
extension and on the pure-Python fallback.  Results must match bit for bit;
the point of the compiled lane is speed alone.

Usage: python3 benchmarks/bench_routing.py [--nodes N] [--edges E]
       [--vehicles V] [--horizon H] [--pairs P] [--repeat R]
"""

import argparse
import time

import numpy as np

from dynroute import sample_pairs, seed_vehicles, synthetic_network
from dynroute.prediction import predict_timeline

try:
    from dynroute import _ckernels
except ImportError:
    _ckernels = None
from dynroute import _py_kernels


def run_lane(kernels, timeline, pairs, repeat):
    matrix = timeline.matrix_at(0)
    dyn_out, sta_out = [], []
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        dyn_out, sta_out = [], []
        for src, dst in pairs:
            dyn_out.append(kernels.dynamic_dijkstra_arrays(
                timeline.indptr, timeline.nbrs, timeline.arc_cols,
                timeline.keys, timeline.weights, src, dst))
            sta_out.append(kernels.static_dijkstra_arrays(matrix, src, dst))
        best = min(best, time.perf_counter() - t0)
    return best, dyn_out, sta_out


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nodes", type=int, default=300)
    p.add_argument("--edges", type=int, default=700)
    p.add_argument("--vehicles", type=int, default=500)
    p.add_argument("--horizon", type=int, default=120)
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args()

    if _ckernels is None:
        print("compiled extension not built, nothing to compare")
        return 1

    graph = synthetic_network(args.nodes, args.edges, seed=3)
    world = seed_vehicles(graph, args.vehicles, 4)
    timeline = predict_timeline(world, args.horizon)
    pairs = sample_pairs(graph.node_count, args.pairs, np.random.default_rng(5))
    print(f"network: {graph.node_count} nodes / {graph.edge_count} edges, "
          f"timeline: {len(timeline.keys)} keys x {len(timeline.arcs)} arcs, "
          f"pairs: {len(pairs)}")

    t_c, dyn_c, sta_c = run_lane(_ckernels, timeline, pairs, args.repeat)
    t_p, dyn_p, sta_p = run_lane(_py_kernels, timeline, pairs, args.repeat)

    for (dc, pc), (dp, pp) in zip(dyn_c, dyn_p):
        assert np.array_equal(dc, dp) and np.array_equal(pc, pp)
    for (dc, pc), (dp, pp) in zip(sta_c, sta_p):
        assert np.array_equal(dc, dp) and np.array_equal(pc, pp)
    print("lane outputs identical: yes")

    print(f"compiled:    {t_c * 1000:9.2f} ms")
    print(f"pure-python: {t_p * 1000:9.2f} ms")
    print(f"speedup:     {t_p / t_c:9.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
