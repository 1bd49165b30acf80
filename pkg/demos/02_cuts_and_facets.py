# Cuts on the all-live nine-node network, printed the way one would write them.

import numpy as np

from infmax import cuts, fig1_network, reach_profile, single_scenario, solve_lp_relaxation
from infmax.master import CutModel

g = fig1_network()
scen = single_scenario(g)[0]


def show(cut):
    terms = " + ".join(f"{c:g}x{j + 1}" if c != 1 else f"x{j + 1}" for j, c in sorted(cut.coeffs.items()))
    return f"theta <= {cut.c0:g} + {terms}" if terms else f"theta <= {cut.c0:g}"


for S in ((), (1,), (2,), (3,)):
    prof = reach_profile(scen, [v - 1 for v in S])
    print(f"S={S}:  {show(cuts.submodular_cut(prof))}")

# The same generator under the weaker families.
prof = reach_profile(scen, [0])
print()
print("combinatorial   ", show(cuts.combinatorial_cut(prof, 0, g.n)))
print("L-shaped        ", show(cuts.lshaped_cut(prof, 0, g.n)))
print("strengthened    ", show(cuts.strengthened_lshaped_cut(prof, 0, g.n)))

# Master relaxation over the cuts at {2}, {3}, {1}: its optimum is fractional.
model = CutModel(g.n, 2, [1.0])
for S in ((2,), (3,), (1,)):
    model.add_cut(0, cuts.submodular_cut(reach_profile(scen, [v - 1 for v in S])))
val, x, _ = solve_lp_relaxation(model)
print()
print(f"LP relaxation: {val:.4f} at x = {np.round(x, 4).tolist()}")

# Necessary facet conditions, k = 2.
print()
for S in ((4, 7), (7, 9), (4, 5), (5, 6), (7, 8), (1, 5)):
    verdict = cuts.check_facet_necessity(scen, [v - 1 for v in S], 2)
    print(f"S={S}: {verdict.status}")

# Replacing the generator by its reach closure minus the roots gives a
# dominating cut.
print()
print("from {1,2}:", show(cuts.submodular_cut(reach_profile(scen, [0, 1]))))
print("strengthened:", show(cuts.strengthen_cut(scen, [0, 1], 2)))
