"""Earth Mover's distance and exact verification of the bag-of-words privacy bound.

Uniform bags of equal size reduce to an assignment problem (the optimal
plan is a permutation matrix scaled by 1/N). Everything else goes through
a transportation simplex on the full marginals.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from honeyenc import kernels
from honeyenc.embeddings import (
    DISCRETE_EXPONENTIAL,
    MechanismConfig,
    VectorStore,
    exponential_probabilities,
)
from honeyenc.errors import InputError, ResourceError

Metric = Callable[[object, object], float]

WEIGHT_TOL = 1e-9
RATIO_SLACK = 1e-9
DEFAULT_ENUMERATION_BUDGET = 10**6


@dataclass(frozen=True)
class WeightedBag:
    items: tuple
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.items) != len(self.weights):
            raise InputError("items and weights must have the same length")
        if not self.items:
            raise InputError("a weighted bag needs at least one item")
        if any(w < 0 or not math.isfinite(w) for w in self.weights):
            raise InputError("weights must be finite and non-negative")
        if abs(math.fsum(self.weights) - 1.0) > WEIGHT_TOL:
            raise InputError(f"weights must sum to 1, got {math.fsum(self.weights)!r}")

    @classmethod
    def uniform(cls, items: Sequence) -> "WeightedBag":
        n = len(items)
        if n == 0:
            raise InputError("a weighted bag needs at least one item")
        return cls(tuple(items), (1.0 / n,) * n)

    @property
    def is_uniform(self) -> bool:
        n = len(self.weights)
        return all(abs(w - 1.0 / n) <= 1e-15 for w in self.weights)


@dataclass(frozen=True)
class TransportPlan:
    flow: np.ndarray
    cost: float


def cost_matrix(xs: Sequence, ys: Sequence, metric: Metric) -> np.ndarray:
    return np.array([[float(metric(x, y)) for y in ys] for x in xs], dtype=float).reshape(len(xs), len(ys))


def emd(x: WeightedBag, y: WeightedBag, metric: Metric) -> TransportPlan:
    """Optimal transport between two weighted bags under ``metric``."""
    costs = cost_matrix(x.items, y.items, metric)
    if np.any(costs < 0):
        raise InputError("metric must be non-negative")
    n = len(x.items)
    if n == len(y.items) and x.is_uniform and y.is_uniform:
        cols, _ = kernels.assignment(costs)
        flow = np.zeros((n, n))
        flow[np.arange(n), cols] = 1.0 / n
        total = math.fsum(costs[i, cols[i]] for i in range(n)) / n
        return TransportPlan(flow, total)
    flow = transportation_simplex(np.array(x.weights), np.array(y.weights), costs)
    return TransportPlan(flow, math.fsum((flow * costs).ravel()))


def transportation_simplex(supply: np.ndarray, demand: np.ndarray, costs: np.ndarray,
                           tol: float = 1e-12, max_iter: int | None = None) -> np.ndarray:
    """Solve min <C, F> s.t. row sums = supply, column sums = demand, F >= 0.

    Northwest-corner start, then MODI pivots on the spanning-tree basis.
    Pricing is Dantzig's rule, switching to Bland's rule after a run of
    degenerate pivots so the method cannot cycle.
    """
    m, n = costs.shape
    supply = np.asarray(supply, dtype=float)
    demand = np.asarray(demand, dtype=float) * (supply.sum() / demand.sum())
    flow = np.zeros((m, n))
    basis: set[tuple[int, int]] = set()

    ra, rb = supply.copy(), demand.copy()
    i = j = 0
    while True:
        x = min(ra[i], rb[j])
        flow[i, j] = x
        basis.add((i, j))
        ra[i] -= x
        rb[j] -= x
        if i == m - 1 and j == n - 1:
            break
        if j == n - 1 or (i < m - 1 and ra[i] <= rb[j]):
            i += 1
        else:
            j += 1

    if max_iter is None:
        max_iter = 50 * (m + n) ** 2 + 1000
    degenerate_run = 0
    for _ in range(max_iter):
        u, v = _potentials(basis, costs, m, n)
        reduced = costs - u[:, None] - v[None, :]
        for cell in basis:
            reduced[cell] = 0.0
        if reduced.min() >= -tol:
            return flow
        if degenerate_run > 2 * (m + n):
            ei, ej = map(int, np.argwhere(reduced < -tol)[0])
        else:
            ei, ej = np.unravel_index(int(np.argmin(reduced)), reduced.shape)
            ei, ej = int(ei), int(ej)

        path = _tree_path(basis, m, n, ei, m + ej)
        minus = path[0::2]
        plus = path[1::2]
        theta = min(flow[c] for c in minus)
        leaving = min(c for c in minus if flow[c] == theta)
        for c in minus:
            flow[c] -= theta
        for c in plus:
            flow[c] += theta
        flow[ei, ej] += theta
        flow[leaving] = 0.0
        basis.remove(leaving)
        basis.add((ei, ej))
        degenerate_run = degenerate_run + 1 if theta <= tol else 0
    raise RuntimeError("transportation simplex did not converge")


def _potentials(basis, costs, m, n):
    u = np.full(m, np.nan)
    v = np.full(n, np.nan)
    adj_rows: dict[int, list[int]] = {}
    adj_cols: dict[int, list[int]] = {}
    for i, j in basis:
        adj_rows.setdefault(i, []).append(j)
        adj_cols.setdefault(j, []).append(i)
    u[0] = 0.0
    stack = [("r", 0)]
    while stack:
        kind, k = stack.pop()
        if kind == "r":
            for j in adj_rows.get(k, ()):
                if np.isnan(v[j]):
                    v[j] = costs[k, j] - u[k]
                    stack.append(("c", j))
        else:
            for i in adj_cols.get(k, ()):
                if np.isnan(u[i]):
                    u[i] = costs[i, k] - v[k]
                    stack.append(("r", i))
    return u, v


def _tree_path(basis, m, n, src, dst):
    """Cells along the basis-tree path from node ``src`` to node ``dst``.

    Nodes ``0..m-1`` are rows and ``m..m+n-1`` are columns.
    """
    adj: dict[int, list[int]] = {}
    for i, j in basis:
        adj.setdefault(i, []).append(m + j)
        adj.setdefault(m + j, []).append(i)
    parent = {src: None}
    stack = [src]
    while stack:
        node = stack.pop()
        if node == dst:
            break
        for nb in adj.get(node, ()):
            if nb not in parent:
                parent[nb] = node
                stack.append(nb)
    cells = []
    node = dst
    while parent[node] is not None:
        prev = parent[node]
        a, b = (prev, node) if prev < m else (node, prev)
        cells.append((a, b - m))
        node = prev
    cells.reverse()
    return cells


def flatten_distance(m: Sequence, m_prime: Sequence, metric: Metric) -> float:
    """min over permutations s of (1/N) sum_i d(m_i, m'_s(i))."""
    if len(m) != len(m_prime):
        raise InputError("messages must have the same length")
    n = len(m)
    if n == 0:
        raise InputError("messages must be non-empty")
    costs = cost_matrix(m, m_prime, metric)
    if n > 8:
        _, total = kernels.assignment(costs)
        return total / n
    best = math.inf
    rows = range(n)
    for perm in itertools.permutations(range(n)):
        best = min(best, math.fsum(costs[i, perm[i]] for i in rows))
    return best / n


@dataclass(frozen=True)
class PrivacyReport:
    epsilon: float
    bag_size: int
    emd_value: float
    max_ratio: float
    bound: float
    holds: bool
    argmax_output: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["argmax_output"] = list(self.argmax_output)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def store_metric(store: VectorStore) -> Metric:
    d = store.distances()
    return lambda a, b: float(d[store.idx(a), store.idx(b)])


def bag_output_distribution(store: VectorStore, cfg: MechanismConfig, message: Sequence[str],
                            outputs: np.ndarray) -> np.ndarray:
    """Exact P(K*(message) = c) for each output multiset row of ``outputs``.

    Sums the per-word product over all distinct arrangements of ``c``: the
    permanent of the N x N submatrix divided by the multiplicities' factorials.
    """
    if cfg.mode != DISCRETE_EXPONENTIAL:
        raise InputError("exact output distributions need the discrete_exponential mechanism")
    p = exponential_probabilities(store, cfg.epsilon)
    rows = p[[store.idx(w) for w in message]]
    perms = kernels.permanents_over_outputs(rows, outputs)
    dup = np.array([math.prod(math.factorial(k) for k in Counter(row).values()) for row in outputs.tolist()],
                   dtype=float)
    return perms / dup


def verify_privacy_bound(store: VectorStore, cfg: MechanismConfig, m: Sequence[str],
                         m_prime: Sequence[str],
                         budget: int = DEFAULT_ENUMERATION_BUDGET) -> PrivacyReport:
    if len(m) != len(m_prime):
        raise InputError("messages must have the same length")
    n = len(m)
    if n == 0:
        raise InputError("messages must be non-empty")
    if cfg.mode != DISCRETE_EXPONENTIAL:
        raise InputError("exact verification needs the discrete_exponential mechanism")
    v = len(store)
    if v**n > budget:
        raise ResourceError(f"{v}^{n} outputs exceed the enumeration budget of {budget}")
    for w in itertools.chain(m, m_prime):
        store.idx(w)

    outputs = np.array(list(itertools.combinations_with_replacement(range(v), n)), dtype=np.intp)
    pm = bag_output_distribution(store, cfg, m, outputs)
    pmp = bag_output_distribution(store, cfg, m_prime, outputs)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(pm == 0, 0.0, pm / pmp)
    k = int(np.argmax(ratios))
    max_ratio = float(ratios[k])

    e_d = emd(WeightedBag.uniform(list(m)), WeightedBag.uniform(list(m_prime)), store_metric(store)).cost
    bound = math.exp(cfg.epsilon * n * e_d)
    return PrivacyReport(
        epsilon=cfg.epsilon,
        bag_size=n,
        emd_value=e_d,
        max_ratio=max_ratio,
        bound=bound,
        holds=max_ratio <= bound * (1 + RATIO_SLACK),
        argmax_output=tuple(store.words[i] for i in outputs[k]),
    )


def word_bound_excess(store: VectorStore, cfg: MechanismConfig) -> float:
    """max over (w, w', z) of P(w->z) / (P(w'->z) * exp(eps * d(w, w'))).

    A value <= 1 means every per-word ratio respects the metric bound.
    """
    p = exponential_probabilities(store, cfg.epsilon)
    d = store.distances()
    ratio = p[:, None, :] / p[None, :, :]
    return float((ratio / np.exp(cfg.epsilon * d)[:, :, None]).max())
