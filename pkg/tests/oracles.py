"""Independent reference computations and random instance generators for the tests.

Nothing here calls into the traversal code under test: spreads are computed
by fixpoint iteration over the live arc list.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from infmax.graph import from_arcs
from infmax.scenarios import enumerate_ic, sample_ic, sample_lt


def ids(*labels):
    """1-based node labels of the built-in networks to internal ids."""
    return tuple(v - 1 for v in labels)


def naive_reach(n, live_arcs, seeds) -> set:
    active = set(seeds)
    changed = True
    while changed:
        changed = False
        for t, h in live_arcs:
            if t in active and h not in active:
                active.add(h)
                changed = True
    return active


def naive_spread(scenario, seeds) -> int:
    return len(naive_reach(scenario.n, scenario.live_arcs, seeds))


def naive_expected(sset, seeds) -> float:
    return math.fsum(s.weight * naive_spread(s, seeds) for s in sset.scenarios)


def naive_r(scenario, S, j) -> int:
    """Marginal gain by differencing spreads."""
    return naive_spread(scenario, set(S) | {j}) - naive_spread(scenario, S)


def all_seed_sets(n, k):
    for size in range(k + 1):
        yield from itertools.combinations(range(n), size)


def brute_opt(sset, k) -> float:
    return max(naive_expected(sset, S) for S in all_seed_sets(sset.graph.n, k))


def random_graph(rng, n_min=2, n_max=12, m_max=20):
    n = int(rng.integers(n_min, n_max + 1))
    m = int(rng.integers(0, min(m_max, n * (n - 1)) + 1))
    arcs = set()
    while len(arcs) < m:
        t, h = rng.integers(0, n, size=2)
        if t != h:
            arcs.add((int(t), int(h)))
    return from_arcs(n, arcs)


def random_scenario_set(rng, kind=None, n_max=12, m_max=20, max_scenarios=16):
    kind = kind or ("ic", "lt", "exhaustive")[int(rng.integers(3))]
    if kind == "exhaustive":
        g = random_graph(rng, n_max=n_max, m_max=4)
        return enumerate_ic(g, float(rng.uniform(0.05, 0.95)))
    g = random_graph(rng, n_max=n_max, m_max=m_max)
    count = int(rng.integers(1, max_scenarios + 1))
    seed = int(rng.integers(2**31))
    if kind == "ic":
        return sample_ic(g, float(rng.uniform(0.1, 0.9)), count, seed)
    return sample_lt(g, None, count, seed)


def dense_model_value(model, x) -> float:
    """Cut-model objective via dense matrix arithmetic."""
    x = np.asarray(x, dtype=float)
    total = 0.0
    for s, slot in enumerate(model.cuts):
        theta = float(model.n)
        if slot:
            A = np.array([c.dense(model.n) for c in slot])
            c0 = np.array([c.c0 for c in slot])
            theta = min(theta, float((c0 + A @ x).min()))
        total += model.weights[s] * theta
    return total


def brute_model_opt(model) -> float:
    best = -math.inf
    for S in all_seed_sets(model.n, model.k):
        x = np.zeros(model.n)
        x[list(S)] = 1
        best = max(best, dense_model_value(model, x))
    return best
