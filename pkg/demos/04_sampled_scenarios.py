# Sampled scenarios on a random graph, IC and LT, exact vs greedy.
#
# The graph is a sparse random digraph; scenario counts are modest so the
# script runs in a few seconds. Greedy's bound is its approximation ceiling,
# DCG's is a proven upper bound on the sample-average optimum.

import numpy as np

from infmax import from_arcs, run_dcg, run_greedy, sample_ic, sample_lt

rng = np.random.default_rng(3)
n = 200
arcs = {(int(u), int(v)) for u, v in rng.integers(0, n, size=(800, 2)) if u != v}
g = from_arcs(n, arcs)
print(f"graph: n={g.n} m={g.m}")

for name, sset in (("ic p=0.1", sample_ic(g, 0.1, 100, seed=1)),
                   ("lt 1/indeg", sample_lt(g, None, 100, seed=1))):
    for k in (1, 2, 3):
        dcg = run_dcg(sset, k, warm_start_empty_set=True)
        gr = run_greedy(sset, k)
        print(f"{name:<11} k={k}  dcg {dcg.objective:7.3f} (ub {dcg.bound:7.3f}, {dcg.cuts_total:4d} cuts)"
              f"   greedy {gr.objective:7.3f}  seeds {dcg.labels} / {gr.labels}")
