"""Live-arc scenario generation for the independent cascade and linear threshold models.

Random streams
--------------
Every sampled scenario ``i`` draws from its own PCG64 generator seeded with
``SeedSequence(seed, spawn_key=(i,))``. A scenario is therefore a pure
function of ``(graph, parameters, seed, i)`` and sets can be sampled with any
number of workers without changing a single bit of the output.

Draw order is fixed: independent cascade consumes ``m`` uniforms in canonical
arc order, linear threshold consumes ``n`` uniforms in node-id order.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import DirectedGraph

MAX_ENUMERATED_ARCS = 24


@dataclass(frozen=True, eq=False)
class Scenario:
    """One live-arc graph ``G_w`` with its probability weight."""

    graph: DirectedGraph
    live: np.ndarray
    weight: float
    succ: tuple = field(init=False, repr=False)

    def __post_init__(self):
        live = np.asarray(self.live, dtype=np.int64)
        live.setflags(write=False)
        object.__setattr__(self, "live", live)
        adj: list[list[int]] = [[] for _ in range(self.graph.n)]
        tails = self.graph.tails[live].tolist()
        heads = self.graph.heads[live].tolist()
        for t, h in zip(tails, heads):
            adj[t].append(h)
        object.__setattr__(self, "succ", tuple(tuple(a) for a in adj))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def live_arcs(self) -> list[tuple[int, int]]:
        return list(zip(self.graph.tails[self.live].tolist(), self.graph.heads[self.live].tolist()))

    def live_indeg(self) -> np.ndarray:
        return np.bincount(self.graph.heads[self.live], minlength=self.graph.n)

    def __repr__(self):
        return f"Scenario(live={len(self.live)}/{self.graph.m}, weight={self.weight!r})"


@dataclass(frozen=True, eq=False)
class ScenarioSet:
    graph: DirectedGraph
    scenarios: tuple
    provenance: dict

    @property
    def weights(self) -> np.ndarray:
        return np.array([s.weight for s in self.scenarios], dtype=float)

    def __len__(self):
        return len(self.scenarios)

    def __iter__(self):
        return iter(self.scenarios)

    def __getitem__(self, i):
        return self.scenarios[i]

    def same_as(self, other: "ScenarioSet") -> bool:
        """Bit-level equality of live arcs and weights."""
        if len(self) != len(other) or self.graph != other.graph:
            return False
        return all(
            np.array_equal(a.live, b.live) and a.weight == b.weight
            for a, b in zip(self.scenarios, other.scenarios)
        )


def substream(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(index,))))


def _map(fn, count: int, workers: int):
    if workers <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def _arc_values(graph: DirectedGraph, values, name: str) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(values, dtype=float), (graph.m,)).copy()
    if arr.shape != (graph.m,):
        raise ValueError(f"{name} must have one entry per arc")
    return arr


def sample_ic(graph: DirectedGraph, probs, count: int, seed: int, *, workers: int = 1) -> ScenarioSet:
    """Sample ``count`` equiprobable independent-cascade live-arc graphs.

    Arc ``a`` is live iff its uniform draw is below ``probs[a]``. ``probs``
    may be a scalar applied to every arc.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    pi = _arc_values(graph, probs, "probs")
    if np.any((pi < 0) | (pi > 1)) or not np.all(np.isfinite(pi)):
        raise ValueError("arc probabilities must lie in [0, 1]")
    weight = 1.0 / count

    def one(i):
        draws = substream(seed, i).random(graph.m)
        return Scenario(graph, np.flatnonzero(draws < pi), weight)

    prov = {"kind": "ic_sampled", "seed": int(seed), "count": count,
            "p": float(pi[0]) if graph.m and np.all(pi == pi[0]) else "per-arc"}
    return ScenarioSet(graph, tuple(_map(one, count, workers)), prov)


def enumerate_ic(graph: DirectedGraph, p: float) -> ScenarioSet:
    """All ``2**m`` live-arc graphs with their exact probabilities.

    Subset ``b`` (a bitmask, bit ``a`` set iff arc ``a`` is live) is the
    ``b``-th scenario and has weight ``(1-p)**(m-l) * p**l``.
    """
    m = graph.m
    if m > MAX_ENUMERATED_ARCS:
        raise ValueError(
            f"refusing to enumerate 2**{m} scenarios (limit is {MAX_ENUMERATED_ARCS} arcs)")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    scen = []
    for mask in range(1 << m):
        live = [a for a in range(m) if mask >> a & 1]
        ell = len(live)
        scen.append(Scenario(graph, np.array(live, dtype=np.int64), (1.0 - p) ** (m - ell) * p ** ell))
    prov = {"kind": "ic_exhaustive", "seed": None, "count": 1 << m, "p": float(p)}
    return ScenarioSet(graph, tuple(scen), prov)


def lt_default_weights(graph: DirectedGraph) -> np.ndarray:
    """``w_ij = 1 / indeg(j)`` for every arc."""
    indeg = graph.indeg
    return 1.0 / indeg[graph.heads] if graph.m else np.zeros(0)


def _lt_intervals(graph: DirectedGraph, w: np.ndarray):
    # Cumulative weight of each arc within its head's incoming list (tail order).
    order = np.lexsort((graph.tails, graph.heads))
    lo = np.empty(graph.m)
    hi = np.empty(graph.m)
    running = {}
    for a in order.tolist():
        h = int(graph.heads[a])
        start = running.get(h, 0.0)
        lo[a] = start
        hi[a] = start + w[a]
        running[h] = hi[a]
    return lo, hi


def sample_lt(graph: DirectedGraph, weights=None, count: int = 1, seed: int = 0, *,
              workers: int = 1) -> ScenarioSet:
    """Sample linear-threshold live-arc graphs.

    Node ``j`` keeps at most one incoming arc: arc ``(i, j)`` with probability
    ``w_ij`` and none with probability ``1 - sum_i w_ij``. One uniform per node.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    w = lt_default_weights(graph) if weights is None else _arc_values(graph, weights, "weights")
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        raise ValueError("linear threshold weights must be non-negative")
    totals = np.bincount(graph.heads, weights=w, minlength=graph.n)
    if np.any(totals > 1 + 1e-9):
        j = int(np.argmax(totals))
        raise ValueError(f"incoming weights of node {graph.labels[j]} sum to {totals[j]:.6g} > 1")
    lo, hi = _lt_intervals(graph, w)
    weight = 1.0 / count

    def one(i):
        u = substream(seed, i).random(graph.n)[graph.heads]
        return Scenario(graph, np.flatnonzero((u >= lo) & (u < hi)), weight)

    prov = {"kind": "lt_sampled", "seed": int(seed), "count": count,
            "weights": "indegree" if weights is None else "custom"}
    return ScenarioSet(graph, tuple(_map(one, count, workers)), prov)


def single_scenario(graph: DirectedGraph, live: Sequence[int] | None = None) -> ScenarioSet:
    """A deterministic set holding one scenario (all arcs live by default)."""
    live = np.arange(graph.m) if live is None else np.asarray(sorted(live), dtype=np.int64)
    return ScenarioSet(graph, (Scenario(graph, live, 1.0),), {"kind": "deterministic", "seed": None, "count": 1})


def write_scenarios(sset: ScenarioSet) -> str:
    """Text form: a JSON header comment, then ``weight a1 a2 ...`` per scenario."""
    lines = ["# " + json.dumps(sset.provenance, sort_keys=True)]
    for s in sset.scenarios:
        lines.append(" ".join([repr(float(s.weight))] + [str(a) for a in s.live.tolist()]))
    return "\n".join(lines) + "\n"


def read_scenarios(text: str, graph: DirectedGraph) -> ScenarioSet:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing scenario header")
    prov = json.loads(lines[0][2:])
    scen = []
    for line in lines[1:]:
        if not line.strip():
            continue
        tok = line.split()
        live = np.array([int(t) for t in tok[1:]], dtype=np.int64)
        if live.size and (live.min() < 0 or live.max() >= graph.m):
            raise ValueError("live arc index outside the graph")
        scen.append(Scenario(graph, live, float(tok[0])))
    if prov.get("count") is not None and prov["count"] != len(scen):
        raise ValueError("scenario count does not match header")
    return ScenarioSet(graph, tuple(scen), prov)


def total_weight(sset: ScenarioSet) -> float:
    return math.fsum(s.weight for s in sset.scenarios)
