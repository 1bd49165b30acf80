import numpy as np
import pytest

from infmax.dcg import k1_exact
from infmax.greedy import GUARANTEE, run_greedy
from infmax.scenarios import enumerate_ic, single_scenario
from oracles import brute_opt, naive_expected, random_scenario_set


@pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.7, 0.9, 1.0])
def test_fig1_closed_form(fig1, p):
    rep = run_greedy(enumerate_ic(fig1, p), 2)
    assert rep.labels == (1, 2)
    assert rep.objective == pytest.approx(2 + 7 * p - 2 * p * p, abs=1e-12)
    assert rep.bound_kind == "approximation_guarantee"
    assert rep.bound == pytest.approx(min(9, rep.objective / GUARANTEE))


def test_trajectory(fig1):
    rep = run_greedy(single_scenario(fig1), 2)
    assert rep.history == [(1, 5.0), (2, 7.0)]


def test_guarantee_and_trajectory_random():
    rng = np.random.default_rng(21)
    for _ in range(100):
        sset = random_scenario_set(rng, n_max=9)
        n = sset.graph.n
        if n < 2:
            continue
        k = int(rng.integers(1, n))
        rep = run_greedy(sset, k)
        opt = brute_opt(sset, k)
        assert rep.objective >= GUARANTEE * opt - 1e-9
        assert rep.objective == pytest.approx(naive_expected(sset, rep.seeds), abs=1e-9)
        vals = [v for _, v in rep.history]
        assert vals == sorted(vals) and len(rep.seeds) == k
        assert vals[-1] == pytest.approx(rep.objective, abs=1e-9)


def test_k1_matches_exact():
    rng = np.random.default_rng(22)
    for _ in range(60):
        sset = random_scenario_set(rng)
        if sset.graph.n < 2:
            continue
        assert run_greedy(sset, 1).seeds == k1_exact(sset).seeds


def test_rejects_bad_k(fig1):
    with pytest.raises(ValueError):
        run_greedy(single_scenario(fig1), 0)
