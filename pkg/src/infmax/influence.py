"""Reachability in live-arc graphs: spreads, reach partitions and marginal gains."""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .scenarios import Scenario, ScenarioSet

# Above this size the transitive-closure bitsets get large; fall back to BFS.
CLOSURE_MAX_NODES = 5000


@dataclass(frozen=True)
class SeedSet:
    members: tuple
    k_bound: int | None = None

    def __post_init__(self):
        members = tuple(sorted(set(int(v) for v in self.members)))
        object.__setattr__(self, "members", members)
        if self.k_bound is not None and len(members) > self.k_bound:
            raise ValueError(f"{len(members)} seeds exceed the bound k={self.k_bound}")

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def vector(self, n: int) -> np.ndarray:
        x = np.zeros(n)
        x[list(self.members)] = 1.0
        return x


def _members(seeds) -> tuple:
    if isinstance(seeds, SeedSet):
        return seeds.members
    return tuple(sorted(set(int(v) for v in seeds)))


@dataclass(frozen=True)
class ReachProfile:
    """Partition of ``V`` induced by a seed set in one scenario.

    ``hatR`` holds the seeds and everything they reach, ``barR`` the rest,
    and ``r[j]`` the number of nodes that ``j`` would newly reach.
    """

    seeds: tuple
    hatR: frozenset
    barR: tuple
    sigma: int
    r: dict


def reached(scenario: Scenario, seeds) -> list[bool]:
    succ = scenario.succ
    seen = [False] * scenario.n
    queue = deque()
    for s in _members(seeds):
        if not 0 <= s < scenario.n:
            raise ValueError(f"seed {s} is not a node")
        if not seen[s]:
            seen[s] = True
            queue.append(s)
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return seen


def spread(scenario: Scenario, seeds) -> int:
    """Number of nodes reachable from ``seeds`` (seeds included)."""
    return sum(reached(scenario, seeds))


def expected_spread(sset: ScenarioSet, seeds) -> float:
    """Probability-weighted spread, summed with :func:`math.fsum` in scenario order."""
    members = _members(seeds)
    if not members:
        return 0.0
    return math.fsum(s.weight * spread(s, members) for s in sset.scenarios)


def _counts_bfs(succ, alive: list[bool]) -> list[int]:
    n = len(alive)
    counts = [0] * n
    mark = [-1] * n
    for j in range(n):
        if not alive[j]:
            continue
        mark[j] = j
        stack = [j]
        c = 1
        while stack:
            u = stack.pop()
            for v in succ[u]:
                if alive[v] and mark[v] != j:
                    mark[v] = j
                    c += 1
                    stack.append(v)
        counts[j] = c
    return counts


def _counts_closure(succ, alive: list[bool]) -> list[int]:
    # Tarjan's SCC algorithm emits components sinks-first, so each component's
    # reach bitset is the union of its own nodes and its successors' bitsets.
    n = len(alive)
    index = [-1] * n
    low = [0] * n
    onstack = [False] * n
    comp = [-1] * n
    comp_bits: list[int] = []
    stack: list[int] = []
    counter = 0
    counts = [0] * n
    for root in range(n):
        if not alive[root] or index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        onstack[root] = True
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            while i < len(nbrs) and not alive[nbrs[i]]:
                i += 1
            if i < len(nbrs):
                w = nbrs[i]
                work[-1] = (v, i + 1)
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    onstack[w] = True
                    work.append((w, 0))
                elif onstack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                cid = len(comp_bits)
                members = []
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = cid
                    members.append(w)
                    if w == v:
                        break
                bits = 0
                for u in members:
                    bits |= 1 << u
                for u in members:
                    for w in succ[u]:
                        if alive[w] and comp[w] != cid:
                            bits |= comp_bits[comp[w]]
                comp_bits.append(bits)
                c = bits.bit_count()
                for u in members:
                    counts[u] = c
    return counts


def reach_counts(scenario: Scenario, blocked=None, backend: str = "auto") -> list[int]:
    """For every node outside ``blocked``, how many unblocked nodes it reaches (itself included)."""
    n = scenario.n
    alive = [True] * n if blocked is None else [not b for b in blocked]
    if backend == "auto":
        backend = "closure" if n <= CLOSURE_MAX_NODES else "bfs"
    if backend == "closure":
        return _counts_closure(scenario.succ, alive)
    if backend == "bfs":
        return _counts_bfs(scenario.succ, alive)
    raise ValueError(f"unknown backend {backend!r}")


def reach_profile(scenario: Scenario, seeds, *, marginals: bool = True,
                  backend: str = "auto") -> ReachProfile:
    """Reach partition of ``V`` and the marginal gains ``r_j`` of unreached nodes.

    Nodes already reached by the seeds are removed before counting, so
    ``r_j`` only counts nodes that ``j`` would add.
    """
    members = _members(seeds)
    seen = reached(scenario, members)
    barR = tuple(j for j in range(scenario.n) if not seen[j])
    r = {}
    if marginals and barR:
        counts = reach_counts(scenario, seen, backend)
        r = {j: counts[j] for j in barR}
    hatR = frozenset(j for j in range(scenario.n) if seen[j])
    return ReachProfile(members, hatR, barR, len(hatR), r)


def all_singleton_gains(scenario: Scenario, backend: str = "auto") -> np.ndarray:
    """``r_j(empty set)`` for every node: the size of each node's reach set."""
    return np.array(reach_counts(scenario, None, backend), dtype=np.int64)


def expected_singleton_gains(sset: ScenarioSet, backend: str = "auto") -> np.ndarray:
    gains = np.stack([all_singleton_gains(s, backend) for s in sset.scenarios]).astype(float)
    w = sset.weights
    return np.array([math.fsum(w * gains[:, j]) for j in range(sset.graph.n)])


def reach_sets(scenario: Scenario) -> list[frozenset]:
    """Reach set of every node, by independent traversals."""
    return [frozenset(i for i, s in enumerate(reached(scenario, [j])) if s) for j in range(scenario.n)]


def roots(scenario: Scenario) -> list[int]:
    """Nodes with no incoming live arc."""
    return np.flatnonzero(scenario.live_indeg() == 0).tolist()


def seed_list(seeds: Iterable[int]) -> tuple:
    return _members(seeds)
