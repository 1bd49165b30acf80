"""Exact solver for the cardinality-constrained cut model.

The model is::

    max  sum_s w_s theta_s
    s.t. theta_s <= c0 + a.x     for every cut of slot s
         0 <= theta_s <= n
         sum_j x_j <= k,  x binary

A *slot* is one scenario in multicut mode, or the single aggregated value
variable in singlecut mode (weight 1).

Two exact methods are provided. ``"enumerate"`` keeps a table of the value of
every size-``k`` seed set and updates it incrementally as cuts arrive; it is
used when ``C(n, k)`` is small. ``"bnb"`` is a best-first branch-and-bound
whose node bounds are LP relaxations solved with HiGHS.
"""
from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from .cuts import Cut

ENUMERATION_LIMIT = 250_000
_TOL = 1e-9


@dataclass(eq=False)
class CutModel:
    n: int
    k: int
    weights: np.ndarray
    cuts: list = field(default_factory=list)     # per-slot lists of Cut
    _keys: set = field(default_factory=set, repr=False)
    _table: object = field(default=None, repr=False)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=float)
        if not self.cuts:
            self.cuts = [[] for _ in range(len(self.weights))]

    @property
    def slots(self) -> int:
        return len(self.weights)

    def add_cut(self, slot: int, cut: Cut) -> bool:
        """Append ``cut`` to ``slot``; duplicates are ignored and return ``False``."""
        if not 0 <= slot < self.slots:
            raise IndexError(f"slot {slot} out of range")
        if any(c < 0 or not math.isfinite(c) for c in cut.coeffs.values()):
            raise ValueError("cut coefficients must be finite and non-negative")
        key = (slot,) + cut.key()
        if key in self._keys:
            return False
        self._keys.add(key)
        self.cuts[slot].append(cut)
        return True

    @property
    def num_cuts(self) -> int:
        return sum(len(c) for c in self.cuts)

    def cuts_by_family(self) -> dict:
        out: dict[str, int] = {}
        for slot in self.cuts:
            for c in slot:
                out[c.family] = out.get(c.family, 0) + 1
        return out


@dataclass
class MasterSolution:
    x: np.ndarray
    theta: np.ndarray
    objective: float
    bound: float
    optimal: bool = True
    nodes: int = 0

    @property
    def seeds(self) -> tuple:
        return tuple(int(j) for j in np.flatnonzero(self.x > 0.5))

    @property
    def rel_gap(self) -> float:
        return (self.bound - self.objective) / max(self.objective, 1e-12)


def evaluate_cut_model(model: CutModel, x) -> tuple[np.ndarray, float]:
    """Per-slot ``theta`` (tightest cut, capped at ``n``) and the weighted objective at ``x``."""
    x = np.asarray(x, dtype=float)
    if x.sum() > model.k + _TOL:
        raise ValueError("x violates the cardinality constraint")
    theta = np.full(model.slots, float(model.n))
    for s, slot in enumerate(model.cuts):
        for cut in slot:
            theta[s] = min(theta[s], cut.rhs(x))
    return theta, math.fsum(model.weights * theta)


# -- enumeration -------------------------------------------------------------

class _SetTable:
    def __init__(self, model: CutModel):
        n, k = model.n, min(model.k, model.n)
        self.combos = np.array(list(itertools.combinations(range(n), k)), dtype=np.int64).reshape(-1, k)
        self.values = np.full((len(self.combos), model.slots), float(n))
        self.seen = [0] * model.slots

    def sync(self, model: CutModel):
        n = model.n
        for s, slot in enumerate(model.cuts):
            for cut in slot[self.seen[s]:]:
                a = cut.dense(n)
                rhs = cut.c0 + a[self.combos].sum(axis=1)
                np.minimum(self.values[:, s], rhs, out=self.values[:, s])
            self.seen[s] = len(slot)


def _enumerate(model: CutModel) -> MasterSolution:
    table = model._table
    if table is None or len(table.seen) != model.slots:
        table = model._table = _SetTable(model)
    table.sync(model)
    obj = table.values @ model.weights
    best = float(obj.max())
    i = int(np.flatnonzero(obj >= best - _TOL * max(1.0, abs(best)))[0])
    x = np.zeros(model.n)
    x[table.combos[i]] = 1.0
    theta, value = evaluate_cut_model(model, x)
    return MasterSolution(x, theta, value, max(value, best), True, len(obj))


def enumeration_size(n: int, k: int) -> int:
    return math.comb(n, k)


# -- LP relaxation and branch-and-bound -------------------------------------

class _LP:
    """LP relaxation of a cut model; variables are ``[x_0..x_{n-1}, theta_0..]``."""

    def __init__(self, model: CutModel):
        n, S = model.n, model.slots
        rows, cols, vals, b = [], [], [], []
        r = 0
        for s, slot in enumerate(model.cuts):
            for cut in slot:
                rows.append(r); cols.append(n + s); vals.append(1.0)
                for j, c in cut.coeffs.items():
                    rows.append(r); cols.append(j); vals.append(-c)
                b.append(cut.c0)
                r += 1
        rows += [r] * n
        cols += list(range(n))
        vals += [1.0] * n
        b.append(model.k)
        self.A = sparse.csr_matrix((vals, (rows, cols)), shape=(r + 1, n + S))
        self.b = np.array(b, dtype=float)
        # cut rows again, for evaluating integer points without the LP
        self.G = -self.A[:r, :n]
        self.slot_of = np.array([s for s, slot in enumerate(model.cuts) for _ in slot], dtype=np.int64)
        self.w = model.weights
        self.c = np.concatenate([np.zeros(n), -model.weights])
        self.n, self.S, self.N = n, S, float(model.n)

    def value(self, x: np.ndarray) -> float:
        theta = np.full(self.S, self.N)
        np.minimum.at(theta, self.slot_of, self.b[:-1] + self.G @ x)
        return math.fsum(self.w * theta)

    def solve(self, ones=(), zeros=()):
        lo = np.zeros(self.n + self.S)
        hi = np.concatenate([np.ones(self.n), np.full(self.S, self.N)])
        lo[list(ones)] = 1.0
        hi[list(zeros)] = 0.0
        res = linprog(self.c, A_ub=self.A, b_ub=self.b, bounds=np.column_stack([lo, hi]),
                      method="highs")
        if res.status == 2:
            return None
        if res.status != 0:
            raise RuntimeError(f"LP solve failed: {res.message}")
        return -res.fun, res.x[: self.n], res.x[self.n:]


def solve_lp_relaxation(model: CutModel, ones=(), zeros=()):
    """Optimal value, ``x`` and ``theta`` of the LP relaxation (with optional fixings)."""
    out = _LP(model).solve(ones, zeros)
    if out is None:
        raise ValueError("fixings make the relaxation infeasible")
    return out


def _round(x: np.ndarray, ones: frozenset, zeros: frozenset, k: int) -> np.ndarray:
    free = [j for j in np.argsort(-x, kind="stable").tolist() if j not in ones and j not in zeros]
    chosen = sorted(ones) + free[: k - len(ones)]
    out = np.zeros(len(x))
    out[chosen] = 1.0
    return out


def _branch_and_bound(model: CutModel, rel_gap: float, node_limit: int | None,
                      time_limit: float | None) -> MasterSolution:
    start = time.perf_counter()
    lp = _LP(model)
    k = model.k

    best_x = np.zeros(model.n)
    best_x[: k] = 1.0
    best_val = lp.value(best_x)

    def consider(x):
        nonlocal best_x, best_val
        v = lp.value(x)
        if v > best_val + _TOL * max(1.0, abs(best_val)):
            best_x, best_val = x, v

    def done(bound):
        return bound - best_val <= max(rel_gap * max(best_val, 1e-12), _TOL * max(1.0, abs(best_val)))

    heap = []
    counter = itertools.count()
    root = lp.solve()
    nodes = 1
    consider(_round(root[1], frozenset(), frozenset(), k))
    heapq.heappush(heap, (-root[0], next(counter), frozenset(), frozenset(), root[1]))
    optimal = True
    pruned = -math.inf  # best bound among nodes dropped by the gap test
    while heap:
        bound = -heap[0][0]
        if done(bound):
            break
        if (node_limit is not None and nodes >= node_limit) or \
                (time_limit is not None and time.perf_counter() - start > time_limit):
            optimal = False
            break
        _, _, ones, zeros, x = heapq.heappop(heap)
        frac = np.abs(x - 0.5)
        cand = [j for j in range(model.n) if j not in ones and j not in zeros and _TOL < x[j] < 1 - _TOL]
        if not cand:
            consider(np.round(x))
            continue
        j = min(cand, key=lambda i: (frac[i], i))
        children = [(ones, zeros | {j})]
        if len(ones) < k:
            children.insert(0, (ones | {j}, zeros))
        for c_ones, c_zeros in children:
            out = lp.solve(c_ones, c_zeros)
            nodes += 1
            if out is None:
                continue
            val, cx, _ = out
            consider(_round(cx, c_ones, c_zeros, k))
            if done(val):
                pruned = max(pruned, val)
            else:
                heapq.heappush(heap, (-val, next(counter), c_ones, c_zeros, cx))
    bound = max(best_val, pruned, -heap[0][0] if heap else -math.inf)
    theta, value = evaluate_cut_model(model, best_x)
    return MasterSolution(best_x, theta, value, bound, optimal, nodes)


def solve_master(model: CutModel, rel_gap_target: float = 0.01, *, method: str = "auto",
                 node_limit: int | None = None, time_limit: float | None = None) -> MasterSolution:
    """Maximize the cut model over seed sets of size at most ``k``.

    Returns an ``x`` whose value is within ``rel_gap_target`` of the optimum
    together with a proven upper bound. If a node or time limit is hit, the
    best solution found is returned with ``optimal=False``.
    """
    if rel_gap_target < 0:
        raise ValueError("rel_gap_target must be non-negative")
    if method == "auto":
        method = "enumerate" if enumeration_size(model.n, min(model.k, model.n)) <= ENUMERATION_LIMIT else "bnb"
    if method == "enumerate":
        return _enumerate(model)
    if method == "bnb":
        return _branch_and_bound(model, rel_gap_target, node_limit, time_limit)
    raise ValueError(f"unknown method {method!r}")
