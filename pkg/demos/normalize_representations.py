# Cleaning up a disk representation
#
# Tangent disks and aligned centers are legal but awkward. make_proper
# inflates one disk of each tangent pair a little, and
# perturb_general_position nudges centers until no three are collinear.
# Neither step changes which disks meet.

from diskclique import (
    Disk,
    Representation,
    collinear_triples,
    intersection_graph,
    make_proper,
    perturb_general_position,
)

rep = Representation((
    Disk(0, 0, 1),
    Disk(2, 0, 1),  # tangent to the first
    Disk(6, 0, 1),  # center on the same line
    Disk(3, 5, 1),
))
print("edges", intersection_graph(rep).edges())
print("collinear triples", collinear_triples([d.center for d in rep.disks]))

proper = make_proper(rep)
moved = perturb_general_position(proper)
print("edges after", intersection_graph(moved).edges())
print("collinear triples after", collinear_triples([d.center for d in moved.disks]))

# Values stay exact rationals; floats are only for reading. The tangent
# pair got separated by growing disk 0, and disk 2 moved off the line.

for before, after in zip(rep.disks, moved.disks):
    print([float(c) for c in before.center], "->", [round(float(c), 6) for c in after.center],
          "r", round(float(after.radius), 6))
