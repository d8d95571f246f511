"""Pure-Python routing kernels.

Interchangeable with the compiled versions in ``_ckernels``: same
signatures, same tie-breaking, same floating-point operation order, so the
two lanes produce bit-identical results.
"""

from __future__ import annotations

import heapq

import numpy as np


def _floor_key(keys: list[int], t: float) -> int:
    """Index of the largest key <= t (keys sorted ascending, keys[0] <= t)."""
    lo, hi = 0, len(keys)
    while lo < hi:
        mid = (lo + hi) // 2
        if keys[mid] <= t:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def dynamic_dijkstra_arrays(indptr, nbrs, arc_cols, keys, weights, source: int,
                            dest: int, trace=None):
    """Earliest-arrival search over a timestamp-keyed weight table.

    The arc weight used when leaving node ``u`` is the one recorded at the
    latest key at or before the current label of ``u``.  Heap entries order
    by (arrival time, node id); the destination is never expanded.  Returns
    (labels float64[n], parent int64[n]).

    ``trace``, when given, is called as trace(u, label) at every pop that is
    not stale.
    """
    n = len(indptr) - 1
    key_list = [int(k) for k in keys]
    w = weights.tolist()
    nbrs_l = [int(x) for x in nbrs]
    cols_l = [int(x) for x in arc_cols]
    ptr = [int(x) for x in indptr]

    dist = [float("inf")] * n
    parent = [-1] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        if trace is not None:
            trace(u, d)
        k = _floor_key(key_list, d)
        row = w[k]
        for i in range(ptr[u], ptr[u + 1]):
            v = nbrs_l[i]
            alt = d + row[cols_l[i]]
            if alt < dist[v]:
                dist[v] = alt
                parent[v] = u
                if v != dest:
                    heapq.heappush(heap, (alt, v))
    return np.asarray(dist, dtype=np.float64), np.asarray(parent, dtype=np.int64)


def static_dijkstra_arrays(matrix, source: int, dest: int):
    """Classic lowest-total-weight search over a dense weight matrix.

    Absent arcs are +inf; the diagonal is ignored.  Identical tie-breaking
    to the dynamic kernel, so on a constant weight table both return the
    same labels and parents.  Returns (labels float64[n], parent int64[n]).
    """
    m = matrix.tolist()
    n = len(m)
    dist = [float("inf")] * n
    parent = [-1] * n
    visited = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if visited[u]:
            continue
        visited[u] = True
        row = m[u]
        for v in range(n):
            if v == u or visited[v]:
                continue
            wv = row[v]
            if wv == float("inf"):
                continue
            alt = d + wv
            if alt < dist[v]:
                dist[v] = alt
                parent[v] = u
                if v != dest:
                    heapq.heappush(heap, (alt, v))
    return np.asarray(dist, dtype=np.float64), np.asarray(parent, dtype=np.int64)
