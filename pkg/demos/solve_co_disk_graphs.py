# Maximum cliques in disk graphs by working in the complement
#
# A clique in a graph is an independent set in its complement. When the
# graph comes from intersecting disks, the complement has very little
# room for odd cycles, and that is what the solver exploits.

from fractions import Fraction

from diskclique import SolveConfig, brute_force_max_clique, complement, cycle_union, solve_max_clique

# Start from a graph we understand: the complement of three disjoint
# cycles of lengths 4, 6 and 5. Its maximum clique takes 2 + 3 + 2 = 7
# vertices, one independent set per cycle.

g = complement(cycle_union([4, 6, 5]))
report = solve_max_clique(g)
print("value", report.value, "optimal", report.optimal)
print("clique", sorted(report.clique))

# The trace says which route the solver took. Here the complement has
# maximum degree 2, so nothing is branched on; the frontier picks the
# 5-cycle, and since removing its closed neighbourhood leaves a bipartite
# graph it only has to enumerate independent subsets of that neighbourhood.

for event in report.strategy_trace:
    print({k: v for k, v in event.items() if k not in ("chosen", "vertices")})

# Compare against plain enumeration.

print("oracle", len(brute_force_max_clique(g)))

# Two disjoint odd cycles in the complement cannot come from disks. The
# solver still answers correctly, and it hands back the two cycles as a
# certificate that the input was not a disk graph.

bad = complement(cycle_union([9, 9]))
report = solve_max_clique(bad)
print("value", report.value)
print("certificate", report.certificate.cycle_a.vertices, report.certificate.cycle_b.vertices)
print("valid", report.certificate.is_valid_for(complement(bad)))

# Weights are exact rationals.

weighted = g.with_weights([Fraction(k % 3 + 1, 2) for k in range(g.n)])
print("weighted value", solve_max_clique(weighted).value)

# The qptas mode trades exactness for a cheaper base case: it deletes an
# odd cycle cover and solves what is left. The value never drops by more
# than the reported additive bound.

report = solve_max_clique(g, SolveConfig(mode="qptas", eps=Fraction(1, 4)))
print("qptas value", report.value, "bound", report.stats["additive_bound"])
