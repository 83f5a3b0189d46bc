"""Exact planar predicates on closed disks, and the representation normalizers.

Every predicate here runs on ``Fraction`` coordinates.  Distances between
centers are irrational in general, so whenever a *distance* (rather than a
comparison of squared quantities) is needed we use rational bounds from an
integer square root and say which side the bound errs on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Optional, Sequence

from .graph import Graph


class GeometryError(ValueError):
    pass


class DegenerateGeometryError(GeometryError):
    """Input violates general position; ``points`` names the offending triple."""

    def __init__(self, message, points=()):
        self.points = tuple(points)
        super().__init__(message)


def as_point(p) -> tuple:
    return (Fraction(p[0]), Fraction(p[1]))


def orient(a, b, c) -> Fraction:
    """Twice the signed area of ``abc``; positive when counter-clockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sqrt_bounds(q: Fraction, bits: int = 64) -> tuple:
    """Rationals ``lo <= sqrt(q) <= hi`` with ``hi - lo <= 2**-bits``."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    scale = 1 << (2 * bits)
    num = q.numerator * scale
    root = isqrt(num // q.denominator)
    lo = Fraction(root, 1 << bits)
    hi = Fraction(root + 1, 1 << bits)
    return lo, hi


@dataclass(frozen=True)
class Disk:
    center_x: Fraction
    center_y: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center_x", Fraction(self.center_x))
        object.__setattr__(self, "center_y", Fraction(self.center_y))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise GeometryError(f"radius must be positive, got {self.radius}")

    @property
    def center(self) -> tuple:
        return (self.center_x, self.center_y)


@dataclass(frozen=True)
class Representation:
    disks: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        disks = tuple(self.disks)
        if not disks:
            raise GeometryError("a representation needs at least one disk")
        object.__setattr__(self, "disks", disks)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(disks):
                raise GeometryError("one label per disk")
            object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.disks)


def center_gap_squared(a: Disk, b: Disk) -> Fraction:
    dx = a.center_x - b.center_x
    dy = a.center_y - b.center_y
    return dx * dx + dy * dy


def disks_intersect(a: Disk, b: Disk) -> bool:
    # closed disks: tangency is an intersection
    reach = a.radius + b.radius
    return center_gap_squared(a, b) <= reach * reach


def disks_overlap_properly(a: Disk, b: Disk) -> bool:
    reach = a.radius + b.radius
    return center_gap_squared(a, b) < reach * reach


def intersection_graph(rep: Representation) -> Graph:
    disks = rep.disks
    edges = [(i, j) for i, j in combinations(range(len(disks)), 2) if disks_intersect(disks[i], disks[j])]
    return Graph.from_edges(len(disks), edges)


def positive_distance_lower(a: Disk, b: Disk, bits: int = 64) -> Fraction:
    """A rational strictly below ``d(c_a, c_b) - r_a - r_b`` (disjoint disks only)."""
    gap = center_gap_squared(a, b)
    reach = a.radius + b.radius
    if gap <= reach * reach:
        raise GeometryError("disks intersect; positive distance undefined")
    while True:
        lo, _ = sqrt_bounds(gap, bits)
        value = lo - reach - Fraction(1, 1 << bits)
        if value > 0:
            return value
        bits *= 2


def negative_distance_lower(a: Disk, b: Disk, bits: int = 64) -> Fraction:
    """A rational strictly below ``r_a + r_b - d(c_a, c_b)`` (proper overlaps only)."""
    gap = center_gap_squared(a, b)
    reach = a.radius + b.radius
    if gap >= reach * reach:
        raise GeometryError("disks do not overlap properly; negative distance undefined")
    while True:
        _, hi = sqrt_bounds(gap, bits)
        value = reach - hi - Fraction(1, 1 << bits)
        if value > 0:
            return value
        bits *= 2


def make_proper(rep: Representation) -> Representation:
    """Remove tangencies without changing the intersection graph.

    One disk of each tangent pair grows by ``eps/2``, with ``eps`` a rational
    strictly below the smallest positive distance; every disk grows at most
    once, so no disjoint pair can close up.
    """
    disks = list(rep.disks)
    pairs = list(combinations(range(len(disks)), 2))
    tangent = []
    for i, j in pairs:
        reach = disks[i].radius + disks[j].radius
        if center_gap_squared(disks[i], disks[j]) == reach * reach:
            tangent.append((i, j))
    if not tangent:
        return rep
    apart = [positive_distance_lower(disks[i], disks[j]) for i, j in pairs if not disks_intersect(disks[i], disks[j])]
    if apart:
        grow = min(apart) / 2
    else:
        overlapping = [
            negative_distance_lower(disks[i], disks[j])
            for i, j in pairs
            if disks_overlap_properly(disks[i], disks[j])
        ]
        # every pair intersects, so growth cannot break anything
        grow = min(overlapping) / 2 if overlapping else Fraction(1)
    grown = set()
    for i, j in tangent:
        if i in grown or j in grown:
            continue
        d = disks[i]
        disks[i] = Disk(d.center_x, d.center_y, d.radius + grow)
        grown.add(i)
    return Representation(tuple(disks), rep.labels)


def separation_epsilon(rep: Representation) -> Optional[Fraction]:
    """Rational lower bound on min(smallest positive, smallest negative distance)."""
    disks = rep.disks
    values = []
    for i, j in combinations(range(len(disks)), 2):
        a, b = disks[i], disks[j]
        reach = a.radius + b.radius
        gap = center_gap_squared(a, b)
        if gap == reach * reach:
            raise GeometryError(f"disks {i} and {j} are tangent; call make_proper first")
        values.append(positive_distance_lower(a, b) if gap > reach * reach else negative_distance_lower(a, b))
    return min(values) if values else None


def collinear(a, b, c) -> bool:
    return orient(a, b, c) == 0


def collinear_triples(points: Sequence) -> list:
    return [(i, j, k) for i, j, k in combinations(range(len(points)), 3) if collinear(points[i], points[j], points[k])]


def perturb_general_position(rep: Representation) -> Representation:
    """Move centers by less than ``eps/4`` until they are distinct and no three are collinear.

    Centers are fixed in index order; a center that lies on a line through
    two earlier ones is moved along a small parabola ``(t/k, t/k**2)``, which
    meets each forbidden line at most twice, so some candidate is always free.
    """
    disks = list(rep.disks)
    if len(disks) < 2:
        return rep
    centers = [d.center for d in disks]
    if len(set(centers)) == len(centers) and not collinear_triples(centers):
        return rep
    eps = separation_epsilon(rep)
    step = eps / 8
    for i in range(1, len(disks)):
        # earlier centers are already distinct and in general position
        earlier = [disks[j].center for j in range(i)]
        lines = list(combinations(earlier, 2))

        def blocked(c):
            return c in earlier or any(collinear(p, q, c) for p, q in lines)

        c = disks[i].center
        if not blocked(c):
            continue
        k = 1
        while True:
            cand = (c[0] + step / k, c[1] + step / (k * k))
            if not blocked(cand):
                break
            k += 1
        disks[i] = Disk(cand[0], cand[1], disks[i].radius)
    return Representation(tuple(disks), rep.labels)


# ---------------------------------------------------------------------------
# K_{2,2} diagonal condition and the two-odd-cycle parity audit


def line_meets_segment(p, q, a, b) -> bool:
    """Does the line through ``p, q`` meet the closed segment ``ab``?"""
    return _sign(orient(p, q, a)) * _sign(orient(p, q, b)) <= 0


def segments_meet(a, b, c, d) -> bool:
    """Closed segment intersection; endpoints touching count."""
    o1, o2 = _sign(orient(a, b, c)), _sign(orient(a, b, d))
    o3, o4 = _sign(orient(c, d, a)), _sign(orient(c, d, b))
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True

    def on_segment(p, q, r):
        return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])

    if o1 == 0 and on_segment(a, b, c):
        return True
    if o2 == 0 and on_segment(a, b, d):
        return True
    if o3 == 0 and on_segment(c, d, a):
        return True
    if o4 == 0 and on_segment(c, d, b):
        return True
    return False


def k22_condition_holds(c1, c2, c3, c4) -> bool:
    """Whether centers ``c1c2`` / ``c3c4`` (the two non-edges) can realise a K_{2,2}.

    True iff line(c1,c2) meets seg(c3,c4) or line(c3,c4) meets seg(c1,c2).
    """
    pts = [as_point(c) for c in (c1, c2, c3, c4)]
    if pts[0] == pts[1] or pts[2] == pts[3]:
        raise DegenerateGeometryError("segment endpoints coincide", pts)
    for tri in combinations(range(4), 3):
        if collinear(*(pts[t] for t in tri)):
            raise DegenerateGeometryError(f"points {tri} are collinear", [pts[t] for t in tri])
    return line_meets_segment(pts[0], pts[1], pts[2], pts[3]) or line_meets_segment(pts[2], pts[3], pts[0], pts[1])


@dataclass(frozen=True)
class ParityLedger:
    a: tuple
    b: tuple
    c: tuple
    a_prime: tuple
    b_prime: tuple
    c_prime: tuple

    @property
    def sums(self) -> dict:
        return {
            "a": sum(self.a), "b": sum(self.b), "c": sum(self.c),
            "a_prime": sum(self.a_prime), "b_prime": sum(self.b_prime), "c_prime": sum(self.c_prime),
        }

    def consistent(self) -> bool:
        s = self.sums
        return (
            all(x % 2 == 0 for x in self.a)
            and all(x % 2 == 0 for x in self.a_prime)
            and s["c"] % 2 == 0
            and s["c"] == s["c_prime"]
            and s["b"] == s["a_prime"]
            and s["b_prime"] == s["a"]
        )


@dataclass(frozen=True)
class K22Violation:
    segment_a: tuple
    segment_b: tuple
    pair: tuple
    parity_ledger: ParityLedger
    violated_pairs: tuple = field(default=())


def _polygon_segments(points):
    return [(points[i], points[(i + 1) % len(points)]) for i in range(len(points))]


def audit_two_odd_cycles(cycle1: Sequence, cycle2: Sequence) -> K22Violation:
    """Find a non-edge pair violating the K_{2,2} condition between two odd cycles.

    ``cycle1`` and ``cycle2`` are the centers along two odd cycles of the
    complement.  Returns the full incidence ledger plus the first violated
    pair ``(i, j)``.  If the points could represent the complement of the two
    cycles no pair would be violated; the ledger's parities show that can't
    happen, and a ``GeometryError`` is raised should it ever occur.
    """
    p1 = [as_point(p) for p in cycle1]
    p2 = [as_point(p) for p in cycle2]
    for name, pts in (("cycle1", p1), ("cycle2", p2)):
        if len(pts) < 3 or len(pts) % 2 == 0:
            raise GeometryError(f"{name} must have odd length >= 3, got {len(pts)}")
    allpts = p1 + p2
    if len(set(allpts)) != len(allpts):
        raise DegenerateGeometryError("repeated point", [])
    for tri in combinations(range(len(allpts)), 3):
        if collinear(*(allpts[t] for t in tri)):
            raise DegenerateGeometryError(f"collinear triple {tri}", [allpts[t] for t in tri])
    s1, s2 = _polygon_segments(p1), _polygon_segments(p2)
    line_hits = [[line_meets_segment(*s, *t) for t in s2] for s in s1]    # l(S_i) vs S'_j
    line_hits_rev = [[line_meets_segment(*t, *s) for t in s2] for s in s1]  # l(S'_j) vs S_i
    seg_hits = [[segments_meet(*s, *t) for t in s2] for s in s1]
    ledger = ParityLedger(
        a=tuple(sum(row) for row in line_hits),
        b=tuple(sum(row) for row in line_hits_rev),
        c=tuple(sum(row) for row in seg_hits),
        a_prime=tuple(sum(line_hits_rev[i][j] for i in range(len(s1))) for j in range(len(s2))),
        b_prime=tuple(sum(line_hits[i][j] for i in range(len(s1))) for j in range(len(s2))),
        c_prime=tuple(sum(seg_hits[i][j] for i in range(len(s1))) for j in range(len(s2))),
    )
    violated = tuple(
        (i, j)
        for i in range(len(s1))
        for j in range(len(s2))
        if not line_hits[i][j] and not line_hits_rev[i][j]
    )
    if not violated:
        raise GeometryError("no violated pair found; parity argument contradicted")
    i, j = violated[0]
    return K22Violation(s1[i], s2[j], (i, j), ledger, violated)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Mismatch:
    u: int
    v: int
    expected_edge: bool
    center_gap_squared: Fraction
    radius_sum_squared: Fraction

    def describe(self) -> str:
        rel = "<=" if self.center_gap_squared <= self.radius_sum_squared else ">"
        want = "edge" if self.expected_edge else "non-edge"
        return (
            f"pair ({self.u}, {self.v}): claimed {want}, but |c_u - c_v|^2 = {self.center_gap_squared} "
            f"{rel} (r_u + r_v)^2 = {self.radius_sum_squared}"
        )


@dataclass(frozen=True)
class Verification:
    ok: bool
    mismatch: Optional[Mismatch] = None

    def __bool__(self):
        return self.ok


def verify_representation(rep: Representation, claimed: Graph) -> Verification:
    if len(rep) != claimed.n:
        raise GeometryError(f"representation has {len(rep)} disks, graph has {claimed.n} vertices")
    disks = rep.disks
    for u, v in combinations(range(len(disks)), 2):
        hit = disks_intersect(disks[u], disks[v])
        if hit != claimed.has_edge(u, v):
            reach = disks[u].radius + disks[v].radius
            return Verification(False, Mismatch(u, v, claimed.has_edge(u, v), center_gap_squared(disks[u], disks[v]), reach * reach))
    return Verification(True)
