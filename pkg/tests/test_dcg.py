import numpy as np
import pytest

from infmax import cuts as C
from infmax.dcg import DcgOptions, brute_force_opt, k1_exact, run_dcg
from infmax.graph import from_arcs
from infmax.scenarios import enumerate_ic, sample_ic, single_scenario
from oracles import brute_opt, naive_expected, random_scenario_set

EXACT = dict(master_rel_gap=0.0, epsilon=0.0)


def test_fig1_all_live(fig1):
    rep = run_dcg(single_scenario(fig1), 2, **EXACT)
    assert rep.labels == (2, 3) and rep.objective == 8 and rep.bound == 8
    assert rep.termination == "optimal" and rep.iterations == 4


def test_fig1_k1_first_iteration(fig1):
    rep = run_dcg(single_scenario(fig1), 1, **EXACT)
    assert rep.labels == (1,) and rep.objective == 5


@pytest.mark.parametrize("p, value", [(0.9, 7.4), (0.5, 5.0), (0.4, 4.48), (0.1, 2.68)])
def test_fig1_exhaustive(fig1, p, value):
    rep = run_dcg(enumerate_ic(fig1, p), 2, **EXACT)
    assert rep.objective == pytest.approx(value, abs=1e-9)
    assert rep.bound >= rep.objective


@pytest.mark.parametrize("family", [C.SUBMODULAR, C.COMBINATORIAL, C.LSHAPED, C.LSHAPED_STRENGTHENED])
@pytest.mark.parametrize("aggregation", ["multicut", "singlecut"])
def test_variants_agree_on_random(family, aggregation):
    rng = np.random.default_rng([C.FAMILIES.index(family), aggregation == "singlecut"])
    for _ in range(25):
        sset = random_scenario_set(rng, n_max=8, max_scenarios=6)
        n = sset.graph.n
        k = int(rng.integers(1, n)) if n > 1 else None
        if k is None:
            continue
        rep = run_dcg(sset, k, cut_family=family, aggregation=aggregation, **EXACT)
        opt = brute_opt(sset, k)
        assert abs(rep.objective - opt) <= 1e-9 * max(1, opt)
        assert rep.bound >= opt - 1e-9


def test_history_brackets_optimum():
    rng = np.random.default_rng(17)
    for _ in range(40):
        sset = random_scenario_set(rng, n_max=9)
        if sset.graph.n < 2:
            continue
        k = int(rng.integers(1, sset.graph.n))
        opt = brute_opt(sset, k)
        rep = run_dcg(sset, k, **EXACT)
        lbs = [h[1] for h in rep.history]
        ubs = [h[2] for h in rep.history]
        assert lbs == sorted(lbs) and ubs == sorted(ubs, reverse=True)
        for lb, ub in zip(lbs, ubs):
            assert lb <= opt + 1e-9 <= ub + 2e-9


def test_warm_start_adds_one_cut_per_scenario(fig1):
    sset = sample_ic(fig1, 0.5, 12, seed=3)
    rep = run_dcg(sset, 2, warm_start_empty_set=True, **EXACT)
    assert rep.algorithm == "dcg-subwarmup"
    assert rep.cuts_by_family[C.EMPTY_SET] == 12
    assert rep.cuts_total >= 12
    assert rep.objective == pytest.approx(run_dcg(sset, 2, **EXACT).objective, abs=1e-12)


def test_zero_weight_scenarios_ignored(fig1):
    sset = enumerate_ic(fig1, 1.0)
    assert sum(s.weight > 0 for s in sset) == 1
    rep = run_dcg(sset, 2, **EXACT)
    assert rep.objective == 8 and rep.cuts_total <= 3


def test_iteration_limit(fig1):
    rep = run_dcg(enumerate_ic(fig1, 0.6), 2, max_iterations=1, **EXACT)
    assert rep.termination == "limit" and rep.iterations == 1
    assert rep.objective <= brute_opt(enumerate_ic(fig1, 0.6), 2) + 1e-9 <= rep.bound + 1e-9


def test_time_limit_keeps_valid_bounds(fig1):
    sset = enumerate_ic(fig1, 0.6)
    rep = run_dcg(sset, 2, time_limit=0.0, **EXACT)
    assert rep.termination == "limit"
    assert rep.bound >= brute_opt(sset, 2) - 1e-9


def test_options_validation(fig1):
    with pytest.raises(ValueError):
        DcgOptions(epsilon=-1)
    with pytest.raises(ValueError):
        DcgOptions(cut_family="bogus")
    with pytest.raises(ValueError):
        run_dcg(single_scenario(fig1), 9)


def test_workers_match_serial(fig1):
    sset = sample_ic(fig1, 0.3, 40, seed=8)
    a = run_dcg(sset, 2, **EXACT)
    b = run_dcg(sset, 2, workers=4, **EXACT)
    assert (a.seeds, a.objective, a.cuts_total, a.history) == (b.seeds, b.objective, b.cuts_total, b.history)


def test_bnb_master_backend(fig1):
    sset = sample_ic(fig1, 0.7, 60, seed=2)
    a = run_dcg(sset, 2, master_method="bnb", **EXACT)
    b = run_dcg(sset, 2, master_method="enumerate", **EXACT)
    assert a.objective == pytest.approx(b.objective, abs=1e-12)


def test_k1_exact_examples(fig1):
    rep = k1_exact(single_scenario(fig1))
    assert rep.labels == (1,) and rep.objective == 5
    assert k1_exact(enumerate_ic(fig1, 0.5)).objective == pytest.approx(3.0)
    solo = k1_exact(single_scenario(from_arcs(1, [])))
    assert solo.seeds == (0,) and solo.objective == 1


def test_k1_exact_matches_brute():
    rng = np.random.default_rng(3)
    for _ in range(60):
        sset = random_scenario_set(rng)
        assert k1_exact(sset).objective == pytest.approx(brute_opt(sset, 1), abs=1e-9)


def test_brute_force_examples(fig1):
    rep = brute_force_opt(enumerate_ic(fig1, 0.4), 2)
    assert rep.objective == pytest.approx(4.48, abs=1e-12)
    assert rep.labels == (1, 2)
    assert brute_force_opt(enumerate_ic(fig1, 0.7), 2).labels == (2, 3)
    # at p = 0.5 the sets {1,2} and {2,3} tie; the lexicographically first wins
    assert brute_force_opt(enumerate_ic(fig1, 0.5), 2).labels == (1, 2)


def test_brute_force_matches_oracle_and_wide_path():
    rng = np.random.default_rng(4)
    for _ in range(60):
        sset = random_scenario_set(rng)
        k = int(rng.integers(1, 4))
        rep = brute_force_opt(sset, k)
        assert rep.objective == pytest.approx(brute_opt(sset, k), abs=1e-9)
        assert rep.objective == pytest.approx(naive_expected(sset, rep.seeds), abs=1e-12)
    g = from_arcs(70, [(i, i + 1) for i in range(69)])
    assert brute_force_opt(single_scenario(g), 1).objective == 70


def test_brute_force_refuses_large():
    g = from_arcs(400, [])
    with pytest.raises(ValueError, match="refusing"):
        brute_force_opt(single_scenario(g), 4)
