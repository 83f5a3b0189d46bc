from fractions import Fraction

import pytest

import brute
from instances import builder_instances, built
from diskclique.construction import (
    BuildPlan,
    TwoOddCyclesError,
    build_co_cycles_representation,
    build_with_report,
    complement_edges_by_pairs,
)
from diskclique.geometry import Disk, GeometryError, Representation, intersection_graph, verify_representation
from diskclique.graph import (
    brute_force_max_clique,
    closed_neighborhood,
    complement,
    cycle_union,
    induced_subgraph,
    is_bipartite,
    odd_cycle_cover,
    shortest_odd_cycle,
)


def _components(h):
    seen, sizes = set(), []
    for root in range(h.n):
        if root in seen:
            continue
        stack, size = [root], 0
        seen.add(root)
        while stack:
            v = stack.pop()
            size += 1
            for u in h.adjacency[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        sizes.append(size)
    return sorted(sizes)


# --- plans ----------------------------------------------------------------------


def test_plan_normalises_lengths():
    plan = BuildPlan.from_lengths([6, 5, 4])
    assert plan.even_lengths == (6, 4) and plan.odd_length == 5
    assert plan.lengths == (6, 4, 5)
    assert brute.same_edges(plan.target(), complement(cycle_union([6, 4, 5])))


def test_two_odd_lengths_are_rejected():
    with pytest.raises(TwoOddCyclesError):
        BuildPlan.from_lengths([3, 5])
    with pytest.raises(TwoOddCyclesError):
        BuildPlan((4,), (7, 7))


@pytest.mark.parametrize("kwargs", [
    {"even_lengths": (5,)},
    {"even_lengths": (2,)},
    {"odd_length": 4},
    {"odd_length": 1},
    {},
    {"even_lengths": (4,), "epsilon_ratio": 0},
    {"even_lengths": (4,), "retry_budget": 0},
])
def test_invalid_plans(kwargs):
    with pytest.raises(GeometryError):
        BuildPlan(**kwargs)


# --- named examples ---------------------------------------------------------------


def test_complement_of_c4():
    rep = build_co_cycles_representation(BuildPlan((4,)))
    g = intersection_graph(rep)
    # two crossing pairs: 2K2
    assert sorted(g.edges()) == [(0, 2), (1, 3)]


def test_complement_of_c5():
    rep = build_co_cycles_representation(BuildPlan((), 5))
    g = intersection_graph(rep)
    assert brute.same_edges(g, complement(cycle_union([5])))
    assert all(g.degree(v) == 2 for v in range(5))


def test_c4_c6_c5():
    report = build_with_report(BuildPlan((4, 6), 5))
    rep = report.representation
    assert len(rep) == 15
    g = intersection_graph(rep)
    assert brute.same_edges(g, complement(cycle_union([4, 6, 5])))
    assert len(brute_force_max_clique(g)) == 7
    assert brute.clique_value(g) == 7
    assert len(set(rep.labels)) == 15


def test_complement_pairs_are_the_cycle_edges():
    rep = built((4, 6, 5)).representation
    pairs = complement_edges_by_pairs(rep)
    assert brute.same_edges(
        complement(intersection_graph(rep)), cycle_union([4, 6, 5])
    ) and len(pairs) == 15


def test_reports_first_attempt_and_rational_disks():
    report = built((4, 4, 3))
    assert report.attempts >= 1
    for d in report.representation.disks:
        assert isinstance(d.center_x, Fraction) and isinstance(d.radius, Fraction) and d.radius > 0


def test_shrunk_disk_breaks_verification():
    rep = built((6,)).representation
    disks = list(rep.disks)
    big = max(range(len(disks)), key=lambda i: disks[i].radius)
    d = disks[big]
    disks[big] = Disk(d.center_x, d.center_y, d.radius / 1000)
    check = verify_representation(Representation(tuple(disks), rep.labels), complement(cycle_union([6])))
    assert not check.ok
    assert big in (check.mismatch.u, check.mismatch.v)


# --- all small multisets ------------------------------------------------------------


def test_every_small_multiset_builds():
    instances = builder_instances(16)
    assert len(instances) == 51  # frozen: itertools count of multisets, lengths >= 3, total <= 16, one odd at most
    for lengths, rep, g in instances:
        # vertices are numbered even cycles first, then the odd one
        order = [k for k in lengths if k % 2 == 0] + [k for k in lengths if k % 2]
        assert brute.same_edges(g, complement(cycle_union(order))), lengths


def test_complements_are_unions_of_cycles():
    for lengths, rep, g in builder_instances(16):
        h = complement(g)
        assert all(h.degree(v) == 2 for v in range(h.n))
        assert _components(h) == sorted(lengths)


def test_cover_takes_one_round_on_builder_complements():
    for lengths, rep, g in builder_instances(16):
        h = complement(g)
        cover = odd_cycle_cover(h)
        has_odd = any(k % 2 for k in lengths)
        assert cover.rounds == (1 if has_odd else 0), lengths
        if has_odd:
            c = len(shortest_odd_cycle(h))
            assert len(cover.vertices) <= c * (h.max_degree() - 1), lengths


def test_residual_after_removing_closed_neighbourhood_is_bipartite():
    for lengths, rep, g in builder_instances(16):
        h = complement(g)
        cyc = shortest_odd_cycle(h)
        if cyc is None:
            continue
        ncc = closed_neighborhood(h, cyc.vertices)
        rest, _ = induced_subgraph(h, [v for v in range(h.n) if v not in ncc])
        assert is_bipartite(rest) is not None, lengths
