# Exact expected spread on the nine-node network, k = 2.
#
# Every one of the 2^10 live-arc scenarios is enumerated, so the objective is
# the true expected spread rather than a sample average. Greedy starts from
# node 1 (the largest single reach) and never recovers; the exact solver
# picks {2, 3} while p >= 0.6.

from infmax import enumerate_ic, fig1_network, run_dcg, run_greedy

g = fig1_network()
print(f"{'p':>4} {'exact':>7} {'seeds':>7} {'greedy':>7} {'seeds':>7}")
for p in (1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1):
    sset = enumerate_ic(g, p)
    exact = run_dcg(sset, 2, warm_start_empty_set=True, master_rel_gap=0.0)
    greedy = run_greedy(sset, 2)
    print(f"{p:>4} {exact.objective:>7.4g} {str(exact.labels):>7} {greedy.objective:>7.4g} {str(greedy.labels):>7}")

# closed forms: sigma({2,3}) = 2 + 6p, sigma({1,2}) = 2 + 7p - 2p^2.
# They cross at p = 0.5, which is where the two columns meet.
