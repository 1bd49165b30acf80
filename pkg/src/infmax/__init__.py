"""Exact and greedy stochastic influence maximization.

Typical use::

    from infmax import fixtures, enumerate_ic, run_dcg, run_greedy

    g = fixtures.fig1_network()
    scenarios = enumerate_ic(g, 0.9)
    run_dcg(scenarios, k=2, warm_start_empty_set=True, master_rel_gap=0).objective   # 7.4
    run_greedy(scenarios, k=2).objective                                           # 6.68
"""
from . import cuts, fixtures
from .fixtures import a1_15node, fig1_network
from .cuts import (
    Cut,
    FacetVerdict,
    check_facet_necessity,
    combinatorial_cut,
    facet_tag,
    lshaped_cut,
    strengthen_cut,
    strengthened_lshaped_cut,
    submodular_cut,
)
from .dcg import DcgOptions, SolveReport, brute_force_opt, k1_exact, run_dcg
from .graph import DirectedGraph, EdgeListError, from_arcs, load_edge_list, parse_edge_list, serialize
from .greedy import run_greedy
from .influence import (
    ReachProfile,
    SeedSet,
    all_singleton_gains,
    expected_spread,
    reach_profile,
    spread,
)
from .master import CutModel, MasterSolution, evaluate_cut_model, solve_lp_relaxation, solve_master
from .scenarios import (
    Scenario,
    ScenarioSet,
    enumerate_ic,
    lt_default_weights,
    read_scenarios,
    sample_ic,
    sample_lt,
    single_scenario,
    write_scenarios,
)

__version__ = "0.1.0"
