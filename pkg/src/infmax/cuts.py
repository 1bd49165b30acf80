"""Optimality cuts ``theta_w <= c0 + sum_j c_j x_j`` and facet diagnostics.

Families
--------
submodular / empty_set
    ``c0 = sigma(S)``, ``c_j = r_j(S)`` on unreached nodes (``empty_set`` is
    the ``S = {}`` member of the family).
combinatorial
    Min-cut dual cut: ``c_j = n`` on unreached nodes.
lshaped
    Integer L-shaped cut: ``c_j = n - sigma(S)`` on every node outside ``S``.
lshaped_strengthened
    Same coefficient, restricted to unreached nodes.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .influence import ReachProfile, _members, reach_profile, reached
from .scenarios import Scenario

SUBMODULAR = "submodular"
EMPTY_SET = "empty_set"
COMBINATORIAL = "combinatorial"
LSHAPED = "lshaped"
LSHAPED_STRENGTHENED = "lshaped_strengthened"
FAMILIES = (SUBMODULAR, EMPTY_SET, COMBINATORIAL, LSHAPED, LSHAPED_STRENGTHENED)

# Size limit for enumerating root subsets in the facet check.
ENUMERATION_LIMIT = 10**6


class FacetCheckBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Cut:
    scenario: int | None
    c0: float
    coeffs: dict
    family: str
    seeds: tuple = ()
    facet: str | None = field(default=None, compare=False)

    def key(self) -> tuple:
        return (self.scenario, self.family, float(self.c0),
                tuple(sorted((int(j), float(c)) for j, c in self.coeffs.items())))

    def rhs(self, x) -> float:
        return self.c0 + sum(c * x[j] for j, c in self.coeffs.items())

    def dense(self, n: int) -> np.ndarray:
        a = np.zeros(n)
        for j, c in self.coeffs.items():
            a[j] = c
        return a

    def __eq__(self, other):
        return isinstance(other, Cut) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _clean(coeffs: dict) -> dict:
    return {int(j): c for j, c in sorted(coeffs.items()) if c != 0}


def submodular_cut(profile: ReachProfile, scenario_index: int | None = None) -> Cut:
    family = EMPTY_SET if not profile.seeds else SUBMODULAR
    return Cut(scenario_index, float(profile.sigma),
               _clean({j: float(profile.r[j]) for j in profile.barR}), family, profile.seeds)


def combinatorial_cut(profile: ReachProfile, scenario_index: int | None, n: int) -> Cut:
    return Cut(scenario_index, float(profile.sigma),
               _clean({j: float(n) for j in profile.barR}), COMBINATORIAL, profile.seeds)


def lshaped_cut(profile: ReachProfile, scenario_index: int | None, n: int) -> Cut:
    slack = float(n - profile.sigma)
    seeds = set(profile.seeds)
    return Cut(scenario_index, float(profile.sigma),
               _clean({j: slack for j in range(n) if j not in seeds}), LSHAPED, profile.seeds)


def strengthened_lshaped_cut(profile: ReachProfile, scenario_index: int | None, n: int) -> Cut:
    slack = float(n - profile.sigma)
    return Cut(scenario_index, float(profile.sigma),
               _clean({j: slack for j in profile.barR}), LSHAPED_STRENGTHENED, profile.seeds)


def needs_marginals(family: str) -> bool:
    return family in (SUBMODULAR, EMPTY_SET)


def make_cut(family: str, profile: ReachProfile, scenario_index: int | None, n: int) -> Cut:
    if family in (SUBMODULAR, EMPTY_SET):
        return submodular_cut(profile, scenario_index)
    if family == COMBINATORIAL:
        return combinatorial_cut(profile, scenario_index, n)
    if family == LSHAPED:
        return lshaped_cut(profile, scenario_index, n)
    if family == LSHAPED_STRENGTHENED:
        return strengthened_lshaped_cut(profile, scenario_index, n)
    raise ValueError(f"unknown cut family {family!r}")


def aggregate(cuts, weights, family: str) -> Cut:
    """Probability-weighted sum of one cut per scenario (single-cut mode)."""
    coeffs: dict[int, list[float]] = {}
    for cut, w in zip(cuts, weights):
        for j, c in cut.coeffs.items():
            coeffs.setdefault(j, []).append(w * c)
    c0 = math.fsum(w * cut.c0 for cut, w in zip(cuts, weights))
    return Cut(None, c0, _clean({j: math.fsum(v) for j, v in coeffs.items()}), family,
               cuts[0].seeds if cuts else ())


# -- facet conditions -------------------------------------------------------

@dataclass(frozen=True)
class FacetVerdict:
    status: str          # "pass", "fail(i)" or "fail(ii)"
    normalized: tuple    # S together with everything it reaches
    witness: tuple = ()  # covering roots when condition (ii) holds


def _min_root_cover_below(target: int, covers: list[tuple[int, int]], k: int, budget: int):
    """Find fewer than ``k`` roots whose reach covers the ``target`` bitset, or ``None``."""
    if target == 0:
        return ()
    limit = k - 1
    total = sum(math.comb(len(covers), i) for i in range(1, limit + 1)) if limit > 0 else 0
    useful = [(t, c & target) for t, c in covers if c & target]
    if total <= ENUMERATION_LIMIT:
        for size in range(1, limit + 1):
            for combo in itertools.combinations(useful, size):
                acc = 0
                for _, c in combo:
                    acc |= c
                if acc & target == target:
                    return tuple(t for t, _ in combo)
        return None

    nodes = 0

    def search(remaining: int, depth_left: int, chosen: tuple):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise FacetCheckBudgetExceeded(
                f"exact root-cover search exceeded {budget} nodes")
        if remaining == 0:
            return chosen
        if depth_left == 0:
            return None
        # branch on the uncovered node with the fewest covering roots
        best = None
        bits = remaining
        while bits:
            low = bits & -bits
            options = [(t, c) for t, c in useful if c & low]
            if not options:
                return None
            if best is None or len(options) < len(best):
                best = options
            bits ^= low
        for t, c in sorted(best, key=lambda tc: -(tc[1] & remaining).bit_count()):
            found = search(remaining & ~c, depth_left - 1, chosen + (t,))
            if found is not None:
                return found
        return None

    return search(target, limit, ())


def check_facet_necessity(scenario: Scenario, S, k: int, *, budget: int = 10**6) -> FacetVerdict:
    """Check the two necessary conditions for the submodular cut of ``S`` to be a facet.

    ``S`` is first replaced by ``S`` plus everything it reaches. Condition (i)
    asks that no member is a root (live in-degree zero); condition (ii) asks
    that fewer than ``k`` roots together reach all of ``S``.
    """
    members = _members(S)
    seen = reached(scenario, members)
    normalized = tuple(j for j in range(scenario.n) if seen[j])
    indeg = scenario.live_indeg()
    root_nodes = [int(t) for t in np.flatnonzero(indeg == 0)]
    if any(indeg[j] == 0 for j in normalized):
        return FacetVerdict("fail(i)", normalized)

    target = 0
    for j in normalized:
        target |= 1 << j
    covers = []
    for t in root_nodes:
        bits = 0
        for j, s in enumerate(reached(scenario, [t])):
            if s and j != t:
                bits |= 1 << j
        covers.append((t, bits))
    witness = _min_root_cover_below(target, covers, k, budget)
    if witness is None:
        return FacetVerdict("fail(ii)", normalized)
    return FacetVerdict("pass", normalized, tuple(witness))


def facet_tag(scenario: Scenario, S, k: int) -> str:
    """``facet`` when a sufficient condition applies, ``not_facet`` when a necessary one fails."""
    members = _members(S)
    verdict = check_facet_necessity(scenario, members, k)
    if verdict.status != "pass":
        return "not_facet"
    if not members or (len(members) == 1 and k >= 2):
        return "facet"
    return "unknown"


def strengthen_cut(scenario: Scenario, S, k: int | None = None,
                   scenario_index: int | None = None) -> Cut:
    """Submodular cut for ``S`` with dominated root members stripped.

    ``S`` is closed under reachability first; each root in the closed set is
    then dropped, which lowers the constant by one and adds a unit
    coefficient for that root. The result is never weaker than the
    submodular cut of ``S`` on ``0 <= x <= 1``.
    """
    members = _members(S)
    seen = reached(scenario, members)
    indeg = scenario.live_indeg()
    reduced = tuple(j for j in range(scenario.n) if seen[j] and indeg[j] != 0)
    cut = submodular_cut(reach_profile(scenario, reduced), scenario_index)
    if k is not None:
        cut = Cut(cut.scenario, cut.c0, cut.coeffs, cut.family, cut.seeds,
                  facet_tag(scenario, reduced, k))
    return cut


def format_cut(cut: Cut) -> str:
    scen = "-" if cut.scenario is None else str(cut.scenario)
    terms = [f"{j}:{c!r}" for j, c in sorted(cut.coeffs.items())]
    return " ".join([scen, cut.family, repr(cut.c0)] + terms)


def parse_cut(line: str) -> Cut:
    tok = line.split()
    scen = None if tok[0] == "-" else int(tok[0])
    coeffs = {}
    for t in tok[3:]:
        j, c = t.split(":")
        coeffs[int(j)] = float(c)
    return Cut(scen, float(tok[2]), coeffs, tok[1])
