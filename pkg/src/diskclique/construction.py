"""Disk representations of complements of cycle unions (all cycles even but one).

Layout of one even cycle ``1..2s`` in its local frame, everything near the
origin, which is where ``D1`` almost touches the even disks:

* ``D2`` and ``D2s`` are unit disks side by side, centers ``eps`` apart;
  ``D1`` is the unit disk above, tangent to both at ``p1`` and ``ps``, then
  lifted a little so it touches neither.
* ``p2 .. p_{s-1}`` lie on a flattened copy of ``D1``'s lower arc: a convex
  x-monotone chain inside ``D1`` and below ``l(p1, ps)``.
* Each middle even disk passes through its chain point and lies below the
  tangent there, taken parallel to ``l(p_{i-1}, p_{i+1})``.
* Odd disk ``2i+1`` sits above the common tangent of ``D_{2i}`` and
  ``D_{2i+2}``; its radius doubles until it meets everything it must meet.

Copies for the other even cycles are rotated about the origin.  The single
odd cycle reuses the even layout with ``D'1`` kept on ``D'2s`` and a last
disk ``D'_{2s+1}`` placed on the left, is shrunk, and is rotated by a large
angle.  Geometry is computed in high precision floating point, rounded to
rationals, and then checked exactly; nothing is trusted unverified.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import mpmath

from .geometry import Disk, GeometryError, Mismatch, Representation, disks_intersect, verify_representation
from .graph import Graph, complement, cycle_union

log = logging.getLogger(__name__)

DEFAULT_EPSILON_RATIO = Fraction(1, 1000)
DEFAULT_EVEN_BUDGET_DEGREES = Fraction(30)
DEFAULT_ODD_ROTATION_DEGREES = Fraction(60)
DEFAULT_ODD_SCALE = Fraction(1, 16)
_MAX_DOUBLINGS = 120
_DIGITS = 60


class TwoOddCyclesError(GeometryError):
    """At most one odd cycle can appear in the complement of a disk graph."""


class BuildFailure(GeometryError):
    def __init__(self, message, mismatch: Optional[Mismatch] = None):
        self.mismatch = mismatch
        super().__init__(message)


@dataclass(frozen=True)
class BuildPlan:
    even_lengths: tuple = ()
    odd_length: Optional[int] = None
    epsilon_ratio: Fraction = DEFAULT_EPSILON_RATIO
    rotation_step: Optional[Fraction] = None  # degrees between stacked even copies
    odd_rotation: Fraction = DEFAULT_ODD_ROTATION_DEGREES
    odd_scale: Fraction = DEFAULT_ODD_SCALE
    retry_budget: int = 4

    def __post_init__(self):
        evens = tuple(int(k) for k in self.even_lengths)
        odd = self.odd_length
        if odd is not None and not isinstance(odd, int):
            odds = tuple(int(k) for k in odd)
            if len(odds) > 1:
                raise TwoOddCyclesError(
                    f"requested odd cycles {odds}: the complement of two disjoint odd cycles is not a disk graph"
                )
            odd = odds[0] if odds else None
        for k in evens:
            if k < 4 or k % 2:
                raise GeometryError(f"even cycle lengths must be even and >= 4, got {k}")
        if odd is not None and (odd < 3 or odd % 2 == 0):
            raise GeometryError(f"odd cycle length must be odd and >= 3, got {odd}")
        if not evens and odd is None:
            raise GeometryError("plan requests no cycles")
        if Fraction(self.epsilon_ratio) <= 0:
            raise GeometryError("epsilon_ratio must be positive")
        if self.retry_budget < 1:
            raise GeometryError("retry_budget must be >= 1")
        object.__setattr__(self, "even_lengths", evens)
        object.__setattr__(self, "odd_length", odd)
        object.__setattr__(self, "epsilon_ratio", Fraction(self.epsilon_ratio))

    @classmethod
    def from_lengths(cls, lengths: Sequence[int], **kwargs) -> "BuildPlan":
        evens = [k for k in lengths if k % 2 == 0]
        odds = [k for k in lengths if k % 2 == 1]
        return cls(tuple(evens), tuple(odds), **kwargs)

    @property
    def lengths(self) -> tuple:
        return self.even_lengths + ((self.odd_length,) if self.odd_length is not None else ())

    @property
    def step_degrees(self) -> Fraction:
        if self.rotation_step is not None:
            return Fraction(self.rotation_step)
        return DEFAULT_EVEN_BUDGET_DEGREES / max(len(self.even_lengths), 1)

    def target(self) -> Graph:
        return complement(cycle_union(self.lengths))


# ---------------------------------------------------------------------------
# floating point layout (mpmath)


def _unit(v):
    norm = mpmath.sqrt(v[0] ** 2 + v[1] ** 2)
    return (v[0] / norm, v[1] / norm)


def _dist(a, b):
    return mpmath.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2)


@dataclass
class _Grower:
    """A disk tangent to a fixed line at ``anchor``, on the side of ``normal``."""

    index: int
    anchor: tuple
    normal: tuple
    radius: Fraction = Fraction(1)

    def disk(self) -> Disk:
        return Disk(
            self.anchor[0] + self.radius * self.normal[0],
            self.anchor[1] + self.radius * self.normal[1],
            self.radius,
        )


@dataclass
class _Layout:
    fixed: dict       # local index -> (center, radius) in mp floats
    growers: dict     # local index -> (anchor, normal) in mp floats


def _chain_layout(s: int, eps, lift_fraction, flatten):
    """Anchors, chain, even disks and odd-disk tangent lines for evens ``2..2s``.

    Returns local indices 1..2s (1-based, as in the cycle).  ``D1`` is left
    unlifted so callers can position it.
    """
    h0 = mpmath.sqrt(1 - eps ** 2 / 16)
    if s == 1:
        h0 = mpmath.mpf(1)
    c1 = (mpmath.mpf(0), h0)
    centers = {2: (-eps / 2, -h0), 2 * s: (eps / 2, -h0)}
    if s == 1:
        centers = {2: (mpmath.mpf(0), -h0)}
    chain = {}
    if s >= 2:
        for k in range(1, s + 1):
            x = -eps / 4 + (k - 1) * eps / (2 * (s - 1))
            arc = h0 - mpmath.sqrt(1 - x ** 2)  # height of D1's lower arc, <= 0
            chain[k] = (x, flatten * arc)
        chain[1] = (-eps / 4, mpmath.mpf(0))
        chain[s] = (eps / 4, mpmath.mpf(0))
        for k in range(2, s):
            left, right = chain[k - 1], chain[k + 1]
            t = _unit((right[0] - left[0], right[1] - left[1]))
            n = (-t[1], t[0])
            p = chain[k]
            centers[2 * k] = (p[0] - n[0], p[1] - n[1])
    growers = {}
    for k in range(1, s):
        ca, cb = centers[2 * k], centers[2 * k + 2]
        u = _unit((cb[0] - ca[0], cb[1] - ca[1]))
        n = (-u[1], u[0])
        x_mid = (chain[k][0] + chain[k + 1][0]) / 2
        # point of the common tangent line with the chosen abscissa
        base = (ca[0] + n[0], ca[1] + n[1])
        t = (x_mid - base[0]) / u[0]
        growers[2 * k + 1] = ((base[0] + t * u[0], base[1] + t * u[1]), n)
    # lift of D1 keeps the middle chain points inside it
    margins = [1 - _dist(chain[k], c1) for k in range(2, s)]
    lift = lift_fraction * (min(margins) if margins else eps ** 2 / 32)
    return c1, centers, chain, growers, lift


def _even_layout(length: int, eps, lift_fraction, flatten) -> _Layout:
    s = length // 2
    c1, centers, _, growers, lift = _chain_layout(s, eps, lift_fraction, flatten)
    fixed = {k: (c, mpmath.mpf(1)) for k, c in centers.items()}
    fixed[1] = ((c1[0], c1[1] + lift), mpmath.mpf(1))
    return _Layout(fixed, growers)


def _odd_layout(length: int, eps, lift_fraction, flatten) -> _Layout:
    s = (length - 1) // 2
    c1, centers, _, growers, lift = _chain_layout(s, eps, lift_fraction, flatten)
    last = centers[2 * s]
    if s == 1:
        d1 = (c1[0], c1[1] + lift)
    else:
        # swing D'1 about D'2s, away from D'2, until it clears D'2 by `lift`
        c2 = centers[2]
        radial = _unit((c1[0] - last[0], c1[1] - last[1]))
        reach = 2 - lift / 4

        def place(angle):
            ca, sa = mpmath.cos(angle), mpmath.sin(angle)
            r = (radial[0] * ca + radial[1] * sa, -radial[0] * sa + radial[1] * ca)
            return (last[0] + reach * r[0], last[1] + reach * r[1])

        lo, hi = mpmath.mpf(0), mpmath.mpf("0.5")
        for _ in range(200):
            mid = (lo + hi) / 2
            if _dist(place(mid), c2) < 2 + lift:
                lo = mid
            else:
                hi = mid
        d1 = place(hi)
    fixed = {k: (c, mpmath.mpf(1)) for k, c in centers.items()}
    fixed[1] = (d1, mpmath.mpf(1))
    # D'_{2s+1}: left of the common outer tangent of D'1 and D'2s
    u = _unit((d1[0] - last[0], d1[1] - last[1]))
    n_left = (-u[1], u[0])
    anchor = ((d1[0] + last[0]) / 2 + n_left[0], (d1[1] + last[1]) / 2 + n_left[1])
    growers = dict(growers)
    growers[2 * s + 1] = (anchor, n_left)
    return _Layout(fixed, growers)


def _transform(point, degrees, scale):
    angle = mpmath.radians(mpmath.mpf(degrees.numerator) / degrees.denominator)
    ca, sa = mpmath.cos(angle), mpmath.sin(angle)
    x, y = point[0] * scale, point[1] * scale
    return (x * ca - y * sa, x * sa + y * ca)


def _rotate_vector(v, degrees):
    return _transform(v, degrees, 1)


def _to_fraction(x) -> Fraction:
    return Fraction(mpmath.nstr(x, _DIGITS - 10, min_fixed=-mpmath.inf, max_fixed=mpmath.inf))


def _fpoint(p) -> tuple:
    return (_to_fraction(p[0]), _to_fraction(p[1]))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BuildReport:
    representation: Representation
    target: Graph
    attempts: int
    parameters: dict


def _attempt(plan: BuildPlan, eps_ratio: Fraction, lift_fraction, flatten):
    eps = mpmath.mpf(eps_ratio.numerator) / eps_ratio.denominator
    lengths = plan.lengths
    disks: dict = {}
    growers: list = []
    non_edges: set = set()
    labels: list = []
    offset = 0
    step = plan.step_degrees
    for copy, length in enumerate(lengths):
        is_odd = length % 2 == 1
        if is_odd:
            layout = _odd_layout(length, eps, lift_fraction, flatten)
            degrees, scale = plan.odd_rotation, plan.odd_scale
        else:
            layout = _even_layout(length, eps, lift_fraction, flatten)
            degrees, scale = step * copy, Fraction(1)
        mscale = mpmath.mpf(scale.numerator) / scale.denominator
        for k, (center, radius) in layout.fixed.items():
            c = _fpoint(_transform(center, degrees, mscale))
            disks[offset + k - 1] = Disk(c[0], c[1], _to_fraction(radius * mscale))
        for k, (anchor, normal) in layout.growers.items():
            a = _fpoint(_transform(anchor, degrees, mscale))
            n = _fpoint(_rotate_vector(normal, degrees))
            growers.append(_Grower(offset + k - 1, a, n, Fraction(scale)))
        for k in range(length):
            non_edges.add(frozenset((offset + k, offset + (k + 1) % length)))
            labels.append(f"C{length}.{copy}:{k + 1}")
        offset += length
    total = offset
    for gr in growers:
        disks[gr.index] = gr.disk()

    # grow free disks together until every required intersection holds;
    # growth is monotone, so a pair once met stays met
    for _ in range(_MAX_DOUBLINGS):
        pending = {}
        for gr in growers:
            me = disks[gr.index]
            missing = [
                j for j in range(total)
                if j != gr.index and frozenset((gr.index, j)) not in non_edges and not disks_intersect(me, disks[j])
            ]
            if missing:
                pending[gr.index] = (gr, missing)
        if not pending:
            break
        for gr, _missing in pending.values():
            gr.radius *= 2
            disks[gr.index] = gr.disk()
    else:
        worst = sorted(pending.items())[0]
        raise BuildFailure(f"disk {worst[0]} did not reach disks {worst[1][1]} after {_MAX_DOUBLINGS} doublings")
    rep = Representation(tuple(disks[i] for i in range(total)), tuple(labels))
    return rep


def build_co_cycles_representation(plan: BuildPlan) -> Representation:
    return build_with_report(plan).representation


def build_with_report(plan: BuildPlan) -> BuildReport:
    """Construct, verify exactly, and retry with smaller gaps on failure."""
    target = plan.target()
    eps_ratio = plan.epsilon_ratio
    lift_fraction, flatten = mpmath.mpf("0.25"), mpmath.mpf("0.5")
    last_failure = None
    with mpmath.workdps(_DIGITS):
        for attempt in range(1, plan.retry_budget + 1):
            try:
                rep = _attempt(plan, eps_ratio, lift_fraction, flatten)
            except BuildFailure as exc:
                last_failure = exc
            else:
                check = verify_representation(rep, target)
                if check.ok:
                    params = {"epsilon_ratio": eps_ratio, "lift_fraction": lift_fraction, "flatten": flatten}
                    return BuildReport(rep, target, attempt, params)
                last_failure = BuildFailure(check.mismatch.describe(), check.mismatch)
            log.info("build attempt %d failed: %s", attempt, last_failure)
            eps_ratio /= 2
            lift_fraction /= 2
    raise BuildFailure(f"verification failed after {plan.retry_budget} attempts: {last_failure}",
                       getattr(last_failure, "mismatch", None))


def complement_edges_by_pairs(rep: Representation) -> list:
    """Non-adjacent pairs of the representation, i.e. edges of the complement."""
    return [(i, j) for i, j in combinations(range(len(rep)), 2) if not disks_intersect(rep.disks[i], rep.disks[j])]
