"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

from __future__ import annotations

import math

import numpy as np


def assignment(cost):
    """Minimum-cost perfect assignment on a square matrix (Hungarian method).

    Returns ``(cols, total)`` where ``cols[i]`` is the column matched to row ``i``.
    """
    cost = np.asarray(cost, dtype=float)
    n = cost.shape[0]
    if cost.ndim != 2 or cost.shape[1] != n:
        raise ValueError("cost matrix must be square")
    a = cost.tolist()
    u = [0.0] * (n + 1)
    v = [0.0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [math.inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = math.inf
            j1 = 0
            row = a[i0 - 1]
            ui0 = u[i0]
            for j in range(1, n + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
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
    for j in range(1, n + 1):
        cols[p[j] - 1] = j - 1
    total = 0.0
    for i in range(n):
        total += a[i][cols[i]]
    return cols, total


def _permanent(a: list[list[float]]) -> float:
    n = len(a)
    full = 1 << n
    dp = [0.0] * full
    dp[0] = 1.0
    for mask in range(full - 1):
        val = dp[mask]
        if val == 0.0:
            continue
        row = a[bin(mask).count("1")]
        for j in range(n):
            if not (mask >> j) & 1:
                dp[mask | (1 << j)] += val * row[j]
    return dp[full - 1]


def permanent(a):
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.shape[0] == 0:
        return 1.0
    return _permanent(a.tolist())


def permanents_over_outputs(rows, outputs):
    """For each output multiset (row of ``outputs``), the permanent of
    ``rows[:, output]``. ``rows`` is N x V, ``outputs`` is K x N."""
    rows = np.asarray(rows, dtype=float)
    outputs = np.asarray(outputs, dtype=np.intp)
    n = rows.shape[0]
    if outputs.ndim != 2 or outputs.shape[1] != n:
        raise ValueError("output width must equal the number of rows")
    if n == 0:
        return np.ones(outputs.shape[0])
    table = rows.tolist()
    result = np.empty(outputs.shape[0])
    for t, out in enumerate(outputs.tolist()):
        result[t] = _permanent([[table[i][j] for j in out] for i in range(n)])
    return result
