import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynroute import _py_kernels
from dynroute.kernels import BACKEND
from dynroute.timeline import WeightTimeline

ckernels = pytest.importorskip("dynroute._ckernels",
                               reason="compiled lane not built")


def random_timeline(rng):
    n = int(rng.integers(4, 12))
    k = int(rng.integers(1, 6))
    if k == 1:
        keys = [0]
    else:
        rest = np.sort(rng.choice(80, size=k - 1, replace=False) + 1)
        keys = [0] + [int(x) for x in rest]
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < 0.5:
                arcs.append((u, v)); arcs.append((v, u))
    if not arcs:
        return None, None
    w = rng.uniform(0.5, 30.0, size=(k, len(arcs)))
    return n, WeightTimeline(keys, arcs, w)


def test_backend_reports_a_lane():
    assert BACKEND in ("compiled", "pure-python")


def test_dynamic_bitwise_parity_table4(t4_timeline):
    tl = t4_timeline
    for src in range(10):
        for dst in range(10):
            if src == dst:
                continue
            dc, pc = ckernels.dynamic_dijkstra_arrays(
                tl.indptr, tl.nbrs, tl.arc_cols, tl.keys, tl.weights, src, dst)
            dp, pp = _py_kernels.dynamic_dijkstra_arrays(
                tl.indptr, tl.nbrs, tl.arc_cols, tl.keys, tl.weights, src, dst)
            assert np.array_equal(dc, dp)
            assert np.array_equal(pc, pp)


def test_static_bitwise_parity_table4(t4_timeline):
    m = t4_timeline.matrix_at(0)
    for src in range(10):
        for dst in range(10):
            if src == dst:
                continue
            dc, pc = ckernels.static_dijkstra_arrays(m, src, dst)
            dp, pp = _py_kernels.static_dijkstra_arrays(m, src, dst)
            assert np.array_equal(dc, dp)
            assert np.array_equal(pc, pp)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_dynamic_bitwise_parity_random(seed):
    rng = np.random.default_rng(seed)
    n, tl = random_timeline(rng)
    if tl is None:
        return
    # arcs may skip the highest node ids, shrinking the realized index space
    nc = tl.node_count
    src = int(rng.integers(nc))
    dst = (src + 1 + int(rng.integers(nc - 1))) % nc
    dc, pc = ckernels.dynamic_dijkstra_arrays(
        tl.indptr, tl.nbrs, tl.arc_cols, tl.keys, tl.weights, src, dst)
    dp, pp = _py_kernels.dynamic_dijkstra_arrays(
        tl.indptr, tl.nbrs, tl.arc_cols, tl.keys, tl.weights, src, dst)
    assert np.array_equal(dc, dp)
    assert np.array_equal(pc, pp)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_static_bitwise_parity_random(seed):
    rng = np.random.default_rng(seed)
    n, tl = random_timeline(rng)
    if tl is None:
        return
    m = tl.matrix_at(0)
    nc = tl.node_count
    src = int(rng.integers(nc))
    dst = (src + 1 + int(rng.integers(nc - 1))) % nc
    dc, pc = ckernels.static_dijkstra_arrays(m, src, dst)
    dp, pp = _py_kernels.static_dijkstra_arrays(m, src, dst)
    assert np.array_equal(dc, dp)
    assert np.array_equal(pc, pp)


def test_trace_callback_parity(t4_timeline):
    tl = t4_timeline
    pops_c, pops_p = [], []
    ckernels.dynamic_dijkstra_arrays(tl.indptr, tl.nbrs, tl.arc_cols, tl.keys,
                                     tl.weights, 0, 9,
                                     trace=lambda u, d: pops_c.append((u, d)))
    _py_kernels.dynamic_dijkstra_arrays(tl.indptr, tl.nbrs, tl.arc_cols,
                                        tl.keys, tl.weights, 0, 9,
                                        trace=lambda u, d: pops_p.append((u, d)))
    assert pops_c == pops_p


def test_env_var_forces_pure_lane():
    env = dict(os.environ, DYNROUTE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from dynroute.kernels import BACKEND; print(BACKEND)"],
        capture_output=True, text=True, env=env, check=True)
    assert out.stdout.strip() == "pure-python"


def test_pure_lane_replays_benchmark():
    env = dict(os.environ, DYNROUTE_PURE_PYTHON="1")
    code = (
        "from dynroute import replay_table4\n"
        "r = replay_table4()\n"
        "assert r['dynamic_total'] == 36.0, r\n"
        "assert r['static_planned_total'] == 43.0, r\n"
        "print('ok')\n"
    )
    out = subprocess.run([sys.executable, "-c", code], capture_output=True,
                         text=True, env=env, check=True)
    assert out.stdout.strip() == "ok"
