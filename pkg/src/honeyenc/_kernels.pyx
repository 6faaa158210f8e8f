# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Must stay API-identical to ``_fallback``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport INFINITY

cnp.import_array()


def assignment(double[:, ::1] cost):
    """Minimum-cost perfect assignment on a square matrix (Hungarian method).

    Returns ``(cols, total)`` where ``cols[i]`` is the column matched to row ``i``.
    """
    cdef Py_ssize_t n = cost.shape[0]
    if cost.shape[1] != n:
        raise ValueError("cost matrix must be square")
    cdef cnp.ndarray[double] u_arr = np.zeros(n + 1)
    cdef cnp.ndarray[double] v_arr = np.zeros(n + 1)
    cdef cnp.ndarray[double] minv_arr = np.empty(n + 1)
    cdef cnp.ndarray[cnp.intp_t] p_arr = np.zeros(n + 1, dtype=np.intp)
    cdef cnp.ndarray[cnp.intp_t] way_arr = np.zeros(n + 1, dtype=np.intp)
    cdef cnp.ndarray[cnp.uint8_t] used_arr = np.zeros(n + 1, dtype=np.uint8)
    cdef double[::1] u = u_arr, v = v_arr, minv = minv_arr
    cdef cnp.intp_t[::1] p = p_arr, way = way_arr
    cdef cnp.uint8_t[::1] used = used_arr
    cdef Py_ssize_t i, j, j0, j1, i0
    cdef double delta, cur

    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        for j in range(n + 1):
            minv[j] = INFINITY
            used[j] = 0
        while True:
            used[j0] = 1
            i0 = p[j0]
            delta = INFINITY
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break

    cols = np.empty(n, dtype=np.intp)
    cdef cnp.intp_t[::1] c = cols
    cdef double total = 0.0
    for j in range(1, n + 1):
        c[p[j] - 1] = j - 1
    for i in range(n):
        total += cost[i, c[i]]
    return cols, total


cdef double _permanent(double[:, ::1] a, double[::1] dp) noexcept nogil:
    # subset DP: dp[mask] = sum over assignments of the first popcount(mask)
    # rows to the columns in mask; additions only, so no cancellation
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t full = (<Py_ssize_t>1) << n
    cdef Py_ssize_t mask, j, row, bits, m
    dp[0] = 1.0
    for mask in range(1, full):
        dp[mask] = 0.0
    for mask in range(full - 1):
        if dp[mask] == 0.0:
            continue
        bits = 0
        m = mask
        while m:
            bits += m & 1
            m >>= 1
        row = bits
        for j in range(n):
            if not (mask >> j) & 1:
                dp[mask | ((<Py_ssize_t>1) << j)] += dp[mask] * a[row, j]
    return dp[full - 1]


def permanent(double[:, ::1] a):
    cdef Py_ssize_t n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("matrix must be square")
    if n == 0:
        return 1.0
    cdef double[::1] dp = np.empty((<Py_ssize_t>1) << n)
    return _permanent(a, dp)


def permanents_over_outputs(double[:, ::1] rows, cnp.intp_t[:, ::1] outputs):
    """For each output multiset (row of ``outputs``), the permanent of
    ``rows[:, output]``. ``rows`` is N x V, ``outputs`` is K x N."""
    cdef Py_ssize_t n = rows.shape[0]
    cdef Py_ssize_t k = outputs.shape[0]
    if outputs.shape[1] != n:
        raise ValueError("output width must equal the number of rows")
    result = np.empty(k)
    cdef double[::1] res = result
    if n == 0:
        result[:] = 1.0
        return result
    cdef double[:, ::1] sub = np.empty((n, n))
    cdef double[::1] dp = np.empty((<Py_ssize_t>1) << n)
    cdef Py_ssize_t t, i, j
    with nogil:
        for t in range(k):
            for i in range(n):
                for j in range(n):
                    sub[i, j] = rows[i, outputs[t, j]]
            res[t] = _permanent(sub, dp)
    return result
