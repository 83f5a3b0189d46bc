"""Filled-triangle realisations of co-2-subdivisions.

Vertex ``v`` of the source graph (``i = v + 1`` below) becomes the triangle
``p_i q_i x`` with ``p_i = (i, a i^2)`` on a parabola, ``q_i`` its mirror
image under ``y = 0`` and the shared apex ``x = (n + 1, 0)``.  These all
contain ``x``, so they form a clique.

Edge ``e_k = v_i v_j`` becomes two triangles.  ``D+_k`` sits above the line
``U_i`` of slope ``2 a i`` (parallel to the chord ``p_{i-1} p_{i+1}``, lowered
by ``a/2``): the vertex triangle ``i`` lies strictly below it while every other
vertex triangle is crossed by it.  ``D+_k`` is also above a nearly flat line
of slope ``mu k`` running just above the x-axis, through the region shared by
all vertex triangles.  ``D-_k`` is the mirror picture around ``j``, below a
parallel flat line, so ``D+_k`` and ``D-_k`` are separated by a strip while
flat lines with different slopes cross and make every other pair meet.

Everything is exact rational arithmetic and the result is checked pair by
pair against the co-2-subdivision before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .geometry import GeometryError, as_point, orient
from .graph import Graph, co_two_subdivision, two_subdivision

DEFAULT_PARABOLA = Fraction(1)
DEFAULT_RETRIES = 6


class GadgetFailure(GeometryError):
    def __init__(self, message, pair=None):
        self.pair = pair
        super().__init__(message)


@dataclass(frozen=True)
class Triangle:
    p: tuple
    q: tuple
    r: tuple

    def __post_init__(self):
        pts = [as_point(v) for v in (self.p, self.q, self.r)]
        if orient(*pts) == 0:
            raise GeometryError(f"degenerate triangle {pts}")
        object.__setattr__(self, "p", pts[0])
        object.__setattr__(self, "q", pts[1])
        object.__setattr__(self, "r", pts[2])

    @property
    def points(self) -> tuple:
        return (self.p, self.q, self.r)


def _axes(t: Triangle):
    pts = t.points
    for k in range(3):
        a, b = pts[k], pts[(k + 1) % 3]
        yield (b[1] - a[1], a[0] - b[0])


def _project(t: Triangle, axis):
    vals = [x * axis[0] + y * axis[1] for x, y in t.points]
    return min(vals), max(vals)


def triangle_intersect(a: Triangle, b: Triangle) -> bool:
    """Closed filled triangles share a point iff no edge normal separates them."""
    for axis in list(_axes(a)) + list(_axes(b)):
        lo_a, hi_a = _project(a, axis)
        lo_b, hi_b = _project(b, axis)
        if hi_a < lo_b or hi_b < lo_a:
            return False
    return True


def triangle_intersection_graph(triangles) -> Graph:
    triangles = list(triangles)
    edges = [(i, j) for i, j in combinations(range(len(triangles)), 2)
             if triangle_intersect(triangles[i], triangles[j])]
    return Graph.from_edges(len(triangles), edges)


@dataclass(frozen=True)
class TriangleGadget:
    vertex_triangles: tuple
    edge_triangles: tuple  # D+_0, D-_0, D+_1, D-_1, ...
    target: Graph
    parabola_coefficient: Fraction
    epsilon_angle: Fraction  # slope increment of the nearly flat sides
    attempts: int = 1

    @property
    def triangles(self) -> tuple:
        """All triangles indexed like the vertices of ``target``."""
        return self.vertex_triangles + self.edge_triangles


def _meet(s1, b1, s2, b2):
    """Abscissa where ``y = s1 t + b1`` meets ``y = s2 t + b2``."""
    return (b2 - b1) / (s1 - s2)


def _edge_triangle(i: int, k: int, sign: int, n: int, a: Fraction, mu: Fraction, eta: Fraction,
                   far_left: Fraction) -> Triangle:
    # steep side: U_i (sign +1) or its mirror image (sign -1)
    steep_slope = sign * 2 * a * i
    steep_icpt = sign * a * (Fraction(1, 2) - i * i)  # y = +-a(2 i t - i^2 + 1/2)
    # flat side: y = +-eta + mu k (t + 1); the same slope for both signs
    flat_slope = mu * k
    flat_icpt = sign * eta + mu * k
    te = _meet(steep_slope, steep_icpt, flat_slope, flat_icpt)
    tc = Fraction(n + 2)
    e = (te, steep_slope * te + steep_icpt)
    c = (tc, steep_slope * tc + steep_icpt)
    f = (far_left, flat_slope * far_left + flat_icpt)
    return Triangle(e, c, f)


def _layout(g: Graph, a: Fraction, mu: Fraction, eta: Fraction):
    n = g.n
    apex = (Fraction(n + 1), Fraction(0))
    vertex_triangles = []
    for v in range(n):
        i = v + 1
        vertex_triangles.append(Triangle((i, a * i * i), (i, -a * i * i), apex))
    far_left = Fraction(-3) - 2 * eta / mu
    edge_triangles = []
    for k, (u, w) in enumerate(g.edges()):
        # slopes mu * (k + 1) keep the flat side of edge 0 off the x-axis
        edge_triangles.append(_edge_triangle(u + 1, k + 1, 1, n, a, mu, eta, far_left))
        edge_triangles.append(_edge_triangle(w + 1, k + 1, -1, n, a, mu, eta, far_left))
    return tuple(vertex_triangles), tuple(edge_triangles)


def _first_mismatch(triangles, target: Graph):
    for u, v in combinations(range(len(triangles)), 2):
        if triangle_intersect(triangles[u], triangles[v]) != target.has_edge(u, v):
            return u, v
    return None


def build_triangle_gadget(g: Graph, parabola: Fraction = DEFAULT_PARABOLA,
                          retries: int = DEFAULT_RETRIES) -> TriangleGadget:
    """Filled triangles whose intersection graph is ``co_two_subdivision(g)``."""
    m = g.edge_count
    if m < 1:
        raise GeometryError("gadget needs at least one edge")
    target = co_two_subdivision(g)
    labels = two_subdivision(g).labels
    a = Fraction(parabola)
    if a <= 0:
        raise GeometryError("parabola coefficient must be positive")
    # flat slopes stay well below the slope a of l(p0, p1) and below a over [0, n + 2]
    mu = a / (4 * (m + 1) * (g.n + 3))
    pair = None
    for attempt in range(1, retries + 1):
        eta = mu / 4
        vt, et = _layout(g, a, mu, eta)
        pair = _first_mismatch(vt + et, target)
        if pair is None:
            return TriangleGadget(vt, et, target, a, mu, attempt)
        mu /= 2
        a *= 2
    u, v = pair
    want = "intersect" if target.has_edge(u, v) else "be disjoint"
    raise GadgetFailure(f"triangles {labels[u]} and {labels[v]} should {want} "
                        f"(still wrong after {retries} attempts)", pair)


def verify_gadget(gadget: TriangleGadget) -> Optional[tuple]:
    """First pair whose intersection disagrees with the target, or ``None``."""
    return _first_mismatch(gadget.triangles, gadget.target)
