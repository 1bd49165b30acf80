import math

import numpy as np
import pytest

from infmax.graph import from_arcs
from infmax.influence import spread
from infmax.scenarios import (
    enumerate_ic,
    lt_default_weights,
    read_scenarios,
    sample_ic,
    sample_lt,
    total_weight,
    write_scenarios,
)
from oracles import ids, naive_expected


def test_ic_degenerate_coins(fig1):
    full = sample_ic(fig1, 1.0, 5, seed=1)
    assert all(len(s.live) == fig1.m for s in full)
    empty = sample_ic(fig1, 0.0, 5, seed=1)
    assert all(len(s.live) == 0 for s in empty)
    assert all(s.weight == 1 / 5 for s in full)


def test_ic_live_fraction_binomial(fig1):
    sset = sample_ic(fig1, 0.1, 10000, seed=7)
    trials = 10000 * fig1.m
    frac = sum(len(s.live) for s in sset) / trials
    se = math.sqrt(0.1 * 0.9 / trials)
    assert abs(frac - 0.1) <= 3 * se


def test_ic_rejects_bad_probability(fig1):
    with pytest.raises(ValueError):
        sample_ic(fig1, 1.5, 3, seed=0)
    with pytest.raises(ValueError):
        sample_ic(fig1, 0.5, 0, seed=0)


def test_ic_per_arc_probabilities(fig1):
    probs = np.zeros(fig1.m)
    probs[3] = 1.0
    sset = sample_ic(fig1, probs, 4, seed=2)
    assert all(s.live.tolist() == [3] for s in sset)


def test_enumerate_fig1_half(fig1):
    sset = enumerate_ic(fig1, 0.5)
    assert len(sset) == 1024
    assert all(s.weight == 2.0**-10 for s in sset)
    # bitmask order: scenario b has arc a live iff bit a of b is set
    assert sset[0].live.tolist() == []
    assert sset[5].live.tolist() == [0, 2]
    assert sset[1023].live.tolist() == list(range(10))


def test_enumerate_single_arc():
    g = from_arcs(2, [(0, 1)])
    sset = enumerate_ic(g, 0.3)
    assert [s.weight for s in sset] == [0.7, 0.3]


def test_enumerate_fig1_p09(fig1):
    sset = enumerate_ic(fig1, 0.9)
    assert abs(total_weight(sset) - 1.0) <= 1e-12
    assert naive_expected(sset, ids(2, 3)) == pytest.approx(2 + 6 * 0.9, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.13, 0.5, 0.77, 1.0])
def test_enumerate_weights_normalized(fig1, p):
    assert abs(total_weight(enumerate_ic(fig1, p)) - 1.0) <= 1e-12


def test_enumerate_refuses_large():
    g = from_arcs(30, [(i, i + 1) for i in range(25)])
    with pytest.raises(ValueError, match="refusing"):
        enumerate_ic(g, 0.5)


def test_lt_default_weights(fig1):
    w = lt_default_weights(fig1)
    by_arc = dict(zip(fig1.arcs, w))
    assert by_arc[ids(1, 7)] == 0.5 and by_arc[ids(3, 7)] == 0.5
    assert by_arc[ids(2, 4)] == 1.0
    assert by_arc[ids(3, 9)] == 1.0
    g = from_arcs(5, [(i, 4) for i in range(4)])
    assert lt_default_weights(g).tolist() == [0.25] * 4


def test_lt_single_incoming_always_live():
    g = from_arcs(3, [(0, 1)])
    sset = sample_lt(g, [1.0], 50, seed=3)
    assert all(s.live.tolist() == [0] for s in sset)


def test_lt_frequencies_node5(fig1):
    sset = sample_lt(fig1, lt_default_weights(fig1), 10000, seed=11)
    a15 = fig1.arcs.index(ids(1, 5))
    a25 = fig1.arcs.index(ids(2, 5))
    f1 = sum(a15 in set(s.live.tolist()) for s in sset) / 10000
    f2 = sum(a25 in set(s.live.tolist()) for s in sset) / 10000
    se = math.sqrt(0.25 / 10000)
    assert abs(f1 - 0.5) <= 3 * se and abs(f2 - 0.5) <= 3 * se
    assert f1 + f2 == 1.0  # "none" has probability zero when weights sum to one


def test_lt_at_most_one_live_incoming(fig1):
    sset = sample_lt(fig1, None, 500, seed=5)
    assert all(s.live_indeg().max() <= 1 for s in sset)
    assert all(s.live_indeg()[list(ids(1, 2, 3))].sum() == 0 for s in sset)


def test_lt_validation():
    g = from_arcs(3, [(0, 2), (1, 2)])
    with pytest.raises(ValueError):
        sample_lt(g, [0.7, 0.7], 2, seed=0)
    with pytest.raises(ValueError):
        sample_lt(g, [-0.1, 0.5], 2, seed=0)


@pytest.mark.parametrize("sampler", ["ic", "lt"])
def test_determinism_and_workers(fig1, sampler):
    def make(workers):
        if sampler == "ic":
            return sample_ic(fig1, 0.4, 64, seed=99, workers=workers)
        return sample_lt(fig1, None, 64, seed=99, workers=workers)

    a, b, c = make(1), make(1), make(4)
    assert a.same_as(b) and a.same_as(c)
    assert write_scenarios(a) == write_scenarios(c)
    other = sample_ic(fig1, 0.4, 64, seed=100)
    assert not a.same_as(other)


def test_serialization_roundtrip(fig1):
    for sset in (sample_ic(fig1, 0.3, 20, seed=4), enumerate_ic(fig1, 0.37)):
        back = read_scenarios(write_scenarios(sset), fig1)
        assert back.same_as(sset)
        assert back.provenance == sset.provenance


def test_sample_mean_converges_to_exhaustive(fig1):
    seeds = ids(1, 2)
    exact = naive_expected(enumerate_ic(fig1, 0.4), seeds)
    sample = sample_ic(fig1, 0.4, 4000, seed=21)
    values = np.array([spread(s, seeds) for s in sample], dtype=float)
    se = values.std(ddof=1) / math.sqrt(len(values))
    assert abs(values.mean() - exact) <= 3 * se
