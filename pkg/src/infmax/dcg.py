"""Delayed constraint generation for stochastic influence maximization.

The driver alternates between the master problem over the current cuts
(giving a candidate seed set and an upper bound) and per-scenario reachability
(giving the candidate's true spread, a lower bound, and new cuts) until the
bounds meet.
"""
from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import cuts as cutlib
from .influence import expected_singleton_gains, expected_spread, reach_profile
from .master import CutModel, solve_master
from .scenarios import ScenarioSet

VIOLATION_TOL = 1e-6
_TIE = 1e-12
BRUTE_FORCE_LIMIT = 10**7


@dataclass
class DcgOptions:
    cut_family: str = cutlib.SUBMODULAR
    warm_start_empty_set: bool = False
    aggregation: str = "multicut"
    epsilon: float = 0.0
    master_rel_gap: float = 0.01
    master_method: str = "auto"
    max_iterations: int | None = None
    time_limit: float | None = None
    workers: int = 1

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")
        if self.aggregation not in ("multicut", "singlecut"):
            raise ValueError(f"unknown aggregation {self.aggregation!r}")
        if self.cut_family not in (cutlib.SUBMODULAR, cutlib.COMBINATORIAL,
                                   cutlib.LSHAPED, cutlib.LSHAPED_STRENGTHENED):
            raise ValueError(f"unknown cut family {self.cut_family!r}")


@dataclass
class SolveReport:
    algorithm: str
    seeds: tuple
    labels: tuple
    objective: float
    bound: float
    cuts_total: int = 0
    cuts_by_family: dict = field(default_factory=dict)
    iterations: int = 0
    wall_time: float = 0.0
    termination: str = "optimal"
    bound_kind: str = "proven"
    history: list = field(default_factory=list, repr=False)

    @property
    def gap(self) -> float:
        return (self.bound - self.objective) / max(self.objective, 1e-12)


def _report(algorithm, sset, seeds, bound, t0, **kw) -> SolveReport:
    seeds = tuple(sorted(int(j) for j in seeds))
    return SolveReport(
        algorithm=algorithm,
        seeds=seeds,
        labels=tuple(sset.graph.labels[j] for j in seeds),
        objective=expected_spread(sset, seeds),
        bound=bound,
        wall_time=time.perf_counter() - t0,
        **kw,
    )


def _pmap(fn, items, workers):
    if workers <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def run_dcg(sset: ScenarioSet, k: int, options: DcgOptions | None = None, **overrides) -> SolveReport:
    """Solve the sampled influence maximization problem to optimality.

    Parameters
    ----------
    sset : ScenarioSet
    k : int
        Seed budget, ``1 <= k < n``.
    options : DcgOptions, optional
        Keyword overrides are applied on top (``run_dcg(s, 2, warm_start_empty_set=True)``).

    Returns
    -------
    SolveReport
        ``objective`` is the incumbent's expected spread, ``bound`` the best
        master bound. Scenarios of zero probability are ignored.
    """
    t0 = time.perf_counter()
    opts = options or DcgOptions()
    if overrides:
        opts = DcgOptions(**{**opts.__dict__, **overrides})
    n = sset.graph.n
    if not 1 <= k < n:
        raise ValueError(f"k must satisfy 1 <= k < n (k={k}, n={n})")

    active = [i for i, s in enumerate(sset.scenarios) if s.weight > 0]
    p = np.array([sset.scenarios[i].weight for i in active])
    multicut = opts.aggregation == "multicut"
    model = CutModel(n, k, p if multicut else np.ones(1))
    family = opts.cut_family
    marginals = cutlib.needs_marginals(family)

    def commit(new_cuts):
        added = 0
        if multicut:
            for slot, cut in new_cuts:
                added += model.add_cut(slot, cut)
        elif new_cuts:
            agg = cutlib.aggregate([c for _, c in new_cuts], p, new_cuts[0][1].family)
            added += model.add_cut(0, agg)
        return added

    if opts.warm_start_empty_set:
        profiles = _pmap(lambda i: reach_profile(sset.scenarios[i], ()), active, opts.workers)
        commit([(slot, cutlib.submodular_cut(pr, active[slot])) for slot, pr in enumerate(profiles)])

    lb, ub = 0.0, float(n)
    incumbent: tuple = ()
    history = []
    termination = "optimal"
    iterations = 0
    while True:
        if opts.max_iterations is not None and iterations >= opts.max_iterations:
            termination = "limit"
            break
        remaining = None
        if opts.time_limit is not None:
            remaining = opts.time_limit - (time.perf_counter() - t0)
            if remaining <= 0:
                termination = "limit"
                break
        iterations += 1
        sol = solve_master(model, opts.master_rel_gap, method=opts.master_method, time_limit=remaining)
        ub = min(ub, sol.bound)
        xbar = sol.seeds
        profiles = _pmap(lambda i: reach_profile(sset.scenarios[i], xbar, marginals=marginals),
                         active, opts.workers)
        sigma = math.fsum(w * pr.sigma for w, pr in zip(p, profiles))
        if lb < sigma:
            lb, incumbent = sigma, xbar

        if multicut:
            violated = [(slot, cutlib.make_cut(family, pr, active[slot], n))
                        for slot, pr in enumerate(profiles)
                        if sol.theta[slot] > pr.sigma + VIOLATION_TOL]
        elif sol.theta[0] > sigma + VIOLATION_TOL:
            violated = [(0, cutlib.make_cut(family, pr, active[slot], n))
                        for slot, pr in enumerate(profiles)]
        else:
            violated = []
        added = commit(violated)
        history.append((iterations, lb, ub, added))

        if ub - lb <= opts.epsilon + 1e-9 * max(1.0, abs(lb)):
            break
        if added == 0:
            # nothing violated: the master solution is optimal up to its own gap
            if not sol.optimal:
                termination = "limit"
            break

    name = {cutlib.SUBMODULAR: "dcg-subineqs", cutlib.COMBINATORIAL: "dcg-comb",
            cutlib.LSHAPED: "dcg-lshaped-plain",
            cutlib.LSHAPED_STRENGTHENED: "dcg-lshaped"}[family]
    if opts.warm_start_empty_set and family == cutlib.SUBMODULAR:
        name = "dcg-subwarmup"
    rep = _report(name, sset, incumbent, max(ub, lb), t0,
                  cuts_total=model.num_cuts, cuts_by_family=model.cuts_by_family(),
                  iterations=iterations, termination=termination, history=history)
    return rep


def k1_exact(sset: ScenarioSet) -> SolveReport:
    """Best single seed: the largest expected reach-set size (ties to the lowest id)."""
    t0 = time.perf_counter()
    gains = expected_singleton_gains(sset)
    best = float(gains.max())
    j = int(np.flatnonzero(gains >= best - _TIE * max(1.0, best))[0])
    active = sum(1 for s in sset.scenarios if s.weight > 0)
    rep = _report("k1-exact", sset, (j,), 0.0, t0, cuts_total=active,
                  cuts_by_family={cutlib.EMPTY_SET: active}, iterations=1)
    rep.bound = rep.objective
    return rep


def _reach_masks(sset: ScenarioSet, active):
    n = sset.graph.n
    masks = np.zeros((len(active), n), dtype=object)
    for row, i in enumerate(active):
        succ = sset.scenarios[i].succ
        for j in range(n):
            seen = {j}
            stack = [j]
            while stack:
                u = stack.pop()
                for v in succ[u]:
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            bits = 0
            for v in seen:
                bits |= 1 << v
            masks[row, j] = bits
    return masks


def brute_force_opt(sset: ScenarioSet, k: int) -> SolveReport:
    """Evaluate every seed set with at most ``k`` members; lexicographically first optimum."""
    t0 = time.perf_counter()
    n = sset.graph.n
    count = sum(math.comb(n, i) for i in range(0, min(k, n) + 1))
    if count > BRUTE_FORCE_LIMIT:
        raise ValueError(f"refusing to enumerate {count} seed sets (limit {BRUTE_FORCE_LIMIT})")
    active = [i for i, s in enumerate(sset.scenarios) if s.weight > 0]
    p = np.array([sset.scenarios[i].weight for i in active])
    masks = _reach_masks(sset, active)
    wide = n > 63
    if not wide:
        masks = masks.astype(np.uint64)

    results = []
    for size in range(0, min(k, n) + 1):
        if size == 0:
            combos = np.zeros((1, 0), dtype=np.int64)
        else:
            combos = np.array(list(itertools.combinations(range(n), size)), dtype=np.int64)
        if wide:
            sig = np.array([[_or_count(masks[r], c) for c in combos] for r in range(len(active))],
                           dtype=float).reshape(len(active), len(combos))
        else:
            acc = np.zeros((len(active), len(combos)), dtype=np.uint64)
            for col in range(size):
                acc |= masks[:, combos[:, col]]
            sig = np.bitwise_count(acc).astype(float)
        results.append((combos, p @ sig if len(active) else np.zeros(len(combos))))
    best = max(float(v.max()) for _, v in results)
    tol = _TIE * max(1.0, abs(best))
    best_sets = [tuple(c) for combos, v in results for c in combos[v >= best - tol].tolist()]
    seeds = min(best_sets)
    rep = _report("brute", sset, seeds, 0.0, t0, iterations=count)
    rep.bound = rep.objective
    return rep


def _or_count(row, combo) -> int:
    acc = 0
    for j in combo:
        acc |= row[j]
    return int(acc).bit_count()
