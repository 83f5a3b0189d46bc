"""Maximum clique on disk graphs via odd cycles of the complement.

Submodules:

* ``graph``: graphs, complements, odd cycles, covers, bipartite MIS, oracle
* ``geometry``: exact disk predicates, normalizers, the odd-cycle parity audit
* ``construction``: verified disk representations of co-cycle graphs
* ``solver``: the win-win exact solver and the cover-deletion approximation
* ``hardness``: co-2-subdivisions as filled triangles
* ``io`` / ``svg`` / ``cli``: file formats, pictures and the command line tool
"""

from .construction import BuildFailure, BuildPlan, TwoOddCyclesError, build_co_cycles_representation, build_with_report
from .geometry import (
    Disk,
    GeometryError,
    K22Violation,
    ParityLedger,
    Representation,
    audit_two_odd_cycles,
    collinear_triples,
    disks_intersect,
    intersection_graph,
    k22_condition_holds,
    make_proper,
    perturb_general_position,
    verify_representation,
)
from .graph import (
    Graph,
    OddCycle,
    OddCycleCover,
    brute_force_max_clique,
    co_two_subdivision,
    complement,
    cycle_union,
    is_bipartite,
    max_independent_set_bipartite,
    odd_cycle_cover,
    petersen_graph,
    shortest_odd_cycle,
    two_subdivision,
)
from .hardness import Triangle, TriangleGadget, build_triangle_gadget, triangle_intersect, triangle_intersection_graph
from .solver import (
    NotCoDiskEvidence,
    SolveConfig,
    SolveReport,
    branch_high_degree,
    mis_via_ncc,
    mis_via_occ,
    solve_max_clique,
    solve_qptas_mode,
)

__version__ = "0.1.0"
