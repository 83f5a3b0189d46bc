# Filled triangles realising every co-2-subdivision
#
# Subdividing each edge of a graph twice and taking the complement gives a
# family on which maximum clique stays hard. Triangles can realise all of
# them, which the gadget below does and then verifies exactly.

from diskclique import (
    build_triangle_gadget,
    co_two_subdivision,
    cycle_union,
    petersen_graph,
    solve_max_clique,
    triangle_intersection_graph,
)
from diskclique.svg import triangles_svg

src = cycle_union([3, 3])
gadget = build_triangle_gadget(src)
g = triangle_intersection_graph(gadget.triangles)
print(g.n, "triangles,", g.edge_count, "intersecting pairs")
print("matches co-2-subdivision:", g == co_two_subdivision(src))

# A clique here picks one of the two new vertices on every edge plus an
# independent set of the original graph, so its size is m + alpha.

print("max clique", solve_max_clique(g).value, "= 6 edges + alpha 2")

# The Petersen graph gives 40 triangles.

gadget = build_triangle_gadget(petersen_graph())
print(len(gadget.triangles), "triangles, attempts:", gadget.attempts)

with open("gadget.svg", "w") as fh:
    fh.write(triangles_svg(build_triangle_gadget(src).triangles, src.n))
print("wrote gadget.svg")
