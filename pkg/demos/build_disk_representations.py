# Disks whose intersection graph is the complement of a union of cycles
#
# Any number of even cycles plus at most one odd cycle can be realised.
# The builder places the disks with high precision floats, rounds to
# rationals, and then checks every pair exactly before returning.

from diskclique import BuildPlan, TwoOddCyclesError, build_with_report, intersection_graph
from diskclique.svg import representation_svg

plan = BuildPlan(even_lengths=(4, 6), odd_length=5)
report = build_with_report(plan)
rep = report.representation
print(len(rep), "disks after", report.attempts, "attempt(s)")

# Every disk carries a label naming its cycle, copy and position.

for label, disk in list(zip(rep.labels, rep.disks))[:5]:
    print(label, float(disk.center_x), float(disk.center_y), float(disk.radius))

# The check is exact; the graph really is the target.

print(intersection_graph(rep) == report.target)

# Asking for two odd cycles is refused up front.

try:
    BuildPlan.from_lengths([3, 5])
except TwoOddCyclesError as exc:
    print("refused:", exc)

# Write a picture. The disks of one cycle are nearly equal, so most of the
# action sits in a small region near the shared contact point.

with open("co_cycles.svg", "w") as fh:
    fh.write(representation_svg(rep))
print("wrote co_cycles.svg")
