# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled routing kernels.

Mirrors ``_py_kernels`` operation for operation: same heap order
(arrival time, then node id), same floor-key lookup, same IEEE additions,
so results are bit-identical across the two lanes.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _floor_key(const cnp.int64_t[::1] keys, double t) noexcept:
    cdef Py_ssize_t lo = 0, hi = keys.shape[0], mid
    while lo < hi:
        mid = (lo + hi) // 2
        if keys[mid] <= t:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


cdef inline Py_ssize_t _push(double[::1] hk, cnp.int64_t[::1] hn,
                             Py_ssize_t size, double key, cnp.int64_t node) noexcept:
    cdef Py_ssize_t i = size, p
    cdef double tk
    cdef cnp.int64_t tn
    hk[i] = key
    hn[i] = node
    while i > 0:
        p = (i - 1) >> 1
        if hk[p] < hk[i] or (hk[p] == hk[i] and hn[p] <= hn[i]):
            break
        tk = hk[p]; hk[p] = hk[i]; hk[i] = tk
        tn = hn[p]; hn[p] = hn[i]; hn[i] = tn
        i = p
    return size + 1


cdef inline Py_ssize_t _pop(double[::1] hk, cnp.int64_t[::1] hn,
                            Py_ssize_t size) noexcept:
    # Swaps the minimum into slot size-1 and restores the heap; the caller
    # reads hk/hn at the returned (shrunken) size.
    cdef Py_ssize_t last = size - 1, i = 0, c
    cdef double tk = hk[last]
    cdef cnp.int64_t tn = hn[last]
    hk[last] = hk[0]; hn[last] = hn[0]
    hk[0] = tk; hn[0] = tn
    while True:
        c = 2 * i + 1
        if c >= last:
            break
        if c + 1 < last and (hk[c + 1] < hk[c] or (hk[c + 1] == hk[c] and hn[c + 1] < hn[c])):
            c += 1
        if hk[i] < hk[c] or (hk[i] == hk[c] and hn[i] <= hn[c]):
            break
        tk = hk[i]; hk[i] = hk[c]; hk[c] = tk
        tn = hn[i]; hn[i] = hn[c]; hn[c] = tn
        i = c
    return last


def dynamic_dijkstra_arrays(indptr, nbrs, arc_cols, keys, weights, source, dest,
                            trace=None):
    """Earliest-arrival search over a timestamp-keyed weight table.

    See the pure-Python twin for the full contract.
    """
    cdef const cnp.int64_t[::1] ptr = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int64_t[::1] nbr = np.ascontiguousarray(nbrs, dtype=np.int64)
    cdef const cnp.int64_t[::1] col = np.ascontiguousarray(arc_cols, dtype=np.int64)
    cdef const cnp.int64_t[::1] key = np.ascontiguousarray(keys, dtype=np.int64)
    cdef const double[:, ::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = ptr.shape[0] - 1
    cdef cnp.int64_t src = source, dst = dest

    dist_arr = np.full(n, np.inf, dtype=np.float64)
    parent_arr = np.full(n, -1, dtype=np.int64)
    cdef double[::1] dist = dist_arr
    cdef cnp.int64_t[::1] parent = parent_arr

    # Every strict improvement pushes once, at most one per arc, plus the source.
    cdef Py_ssize_t cap = nbr.shape[0] + 2
    hk_arr = np.empty(cap, dtype=np.float64)
    hn_arr = np.empty(cap, dtype=np.int64)
    cdef double[::1] hk = hk_arr
    cdef cnp.int64_t[::1] hn = hn_arr

    cdef Py_ssize_t size = 0, i, k
    cdef cnp.int64_t u, v
    cdef double d, alt
    cdef bint tracing = trace is not None

    dist[src] = 0.0
    size = _push(hk, hn, size, 0.0, src)
    while size > 0:
        size = _pop(hk, hn, size)
        d = hk[size]
        u = hn[size]
        if d > dist[u]:
            continue
        if tracing:
            trace(int(u), float(d))
        k = _floor_key(key, d)
        for i in range(ptr[u], ptr[u + 1]):
            v = nbr[i]
            alt = d + w[k, col[i]]
            if alt < dist[v]:
                dist[v] = alt
                parent[v] = u
                if v != dst:
                    size = _push(hk, hn, size, alt, v)
    return dist_arr, parent_arr


def static_dijkstra_arrays(matrix, source, dest):
    """Classic lowest-total-weight search over a dense weight matrix.

    See the pure-Python twin for the full contract.
    """
    cdef const double[:, ::1] m = np.ascontiguousarray(matrix, dtype=np.float64)
    cdef Py_ssize_t n = m.shape[0]
    cdef cnp.int64_t src = source, dst = dest

    dist_arr = np.full(n, np.inf, dtype=np.float64)
    parent_arr = np.full(n, -1, dtype=np.int64)
    cdef double[::1] dist = dist_arr
    cdef cnp.int64_t[::1] parent = parent_arr
    visited_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] visited = visited_arr

    cdef Py_ssize_t cap = n * n + 2
    hk_arr = np.empty(cap, dtype=np.float64)
    hn_arr = np.empty(cap, dtype=np.int64)
    cdef double[::1] hk = hk_arr
    cdef cnp.int64_t[::1] hn = hn_arr

    cdef Py_ssize_t size = 0
    cdef cnp.int64_t u, v
    cdef double d, alt, wv
    cdef double inf = np.inf

    dist[src] = 0.0
    size = _push(hk, hn, size, 0.0, src)
    while size > 0:
        size = _pop(hk, hn, size)
        d = hk[size]
        u = hn[size]
        if visited[u]:
            continue
        visited[u] = 1
        for v in range(n):
            if v == u or visited[v]:
                continue
            wv = m[u, v]
            if wv == inf:
                continue
            alt = d + wv
            if alt < dist[v]:
                dist[v] = alt
                parent[v] = u
                if v != dst:
                    size = _push(hk, hn, size, alt, v)
    return dist_arr, parent_arr
