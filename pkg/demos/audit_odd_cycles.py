# Why two disjoint odd cycles never show up in the complement of a disk graph
#
# Put the centers of two odd cycles anywhere in general position. For
# disks, every pair of non-adjacent center pairs (one segment from each
# cycle) must satisfy a diagonal condition: one of the two lines meets the
# other segment. The audit counts crossings and shows by parity that some
# pair has to break that condition, then names it.

import random
from fractions import Fraction

from diskclique import audit_two_odd_cycles, k22_condition_holds

rng = random.Random(3)


def point():
    return (Fraction(rng.randint(-500, 500), 7), Fraction(rng.randint(-500, 500), 7))


pentagon = [point() for _ in range(5)]
heptagon = [point() for _ in range(7)]

violation = audit_two_odd_cycles(pentagon, heptagon)
ledger = violation.parity_ledger
print("a ", ledger.a)
print("b ", ledger.b)
print("c ", ledger.c)
print("a'", ledger.a_prime)
print("sums", ledger.sums)
print("consistent", ledger.consistent())

# The reported pair fails the condition when checked on its own.

print("violated pair", violation.pair)
print("condition holds?", k22_condition_holds(*violation.segment_a, *violation.segment_b))
print("all violated pairs:", len(violation.violated_pairs))
