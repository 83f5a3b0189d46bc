import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import brute
from instances import builder_instances, disk_instances, graphs, random_graph
from diskclique.graph import (
    Graph,
    OddCycle,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    cycle_union,
    empty_graph,
)
from diskclique.solver import (
    EnumerationCapExceeded,
    NotCoDiskEvidence,
    SolveConfig,
    branch_high_degree,
    branch_threshold,
    count_independent_subsets,
    find_not_co_disk_evidence,
    mis_via_ncc,
    mis_via_occ,
    parse_policy,
    solve_max_clique,
    solve_qptas_mode,
)


# --- configuration ---------------------------------------------------------------


def test_policy_parsing():
    assert parse_policy("winwin_cuberoot") == "winwin_cuberoot"
    assert parse_policy("fixed(4)") == ("fixed", 4)
    assert parse_policy("fixed:4") == ("fixed", 4)
    assert parse_policy(("fixed", 2)) == ("fixed", 2)
    with pytest.raises(ValueError):
        parse_policy("fixed(0)")
    with pytest.raises(ValueError):
        parse_policy("sometimes")


def test_thresholds():
    # smallest integer degree d with d >= n^(1/3)
    assert [branch_threshold("winwin_cuberoot", n) for n in (1, 8, 9, 27, 28)] == [1, 2, 3, 3, 4]
    assert branch_threshold("qptas_log4", 2) == 1
    assert branch_threshold("qptas_log4", 18) == 1  # 18 / ln(18)^4 < 1
    assert branch_threshold("qptas_log4", 10 ** 6) == 28  # 10^6 / ln(10^6)^4 is about 27.4
    assert branch_threshold(("fixed", 7), 100) == 7


def test_config_validation():
    with pytest.raises(ValueError):
        SolveConfig(mode="qptas")
    with pytest.raises(ValueError):
        SolveConfig(mode="approx", eps=0)
    with pytest.raises(ValueError):
        SolveConfig(enumeration_cap=0)
    assert SolveConfig(mode="qptas", eps=Fraction(1, 3)).branch_threshold_policy == "qptas_log4"


# --- the solver on the named examples ---------------------------------------------


def test_complement_of_c4_c6_c5():
    g = complement(cycle_union([4, 6, 5]))
    report = solve_max_clique(g)
    assert report.value == 7 and report.optimal
    assert g.is_clique(report.clique)
    assert report.certificate is None
    frontier = [e for e in report.strategy_trace if e["event"] == "case_iii"]
    assert len(frontier) == 1
    assert frontier[0]["c"] == 5 and frontier[0]["ncc_size"] == 5
    assert frontier[0]["residual_bipartite"]


def test_complete_graph_needs_no_branching():
    report = solve_max_clique(complete_graph(6))
    assert report.value == 6
    assert report.stats["branches"] == 0
    assert [e["event"] for e in report.strategy_trace] == ["inspect", "bipartite"]


def test_complement_of_two_nine_cycles_gets_evidence():
    g = complement(cycle_union([9, 9]))
    report = solve_max_clique(g)
    assert report.value == 8
    assert brute.clique_value(g) == 8
    ev = report.certificate
    assert isinstance(ev, NotCoDiskEvidence)
    assert ev.is_valid_for(complement(g))
    assert {len(ev.cycle_a), len(ev.cycle_b)} == {9}
    assert any(e["event"] == "case_ii" and not e["residual_bipartite"] for e in report.strategy_trace)


def test_evidence_checks_itself():
    h = cycle_union([3, 3])
    good = NotCoDiskEvidence(OddCycle((0, 1, 2)), OddCycle((3, 4, 5)))
    assert good.is_valid_for(h)
    joined = Graph.from_edges(6, h.edges() + [(0, 3)])
    assert "edge 0-3 joins the cycles" in good.problems(joined)
    assert not NotCoDiskEvidence(OddCycle((0, 1, 2)), OddCycle((2, 4, 5))).is_valid_for(h)


def test_find_evidence():
    assert find_not_co_disk_evidence(cycle_union([5, 4])) is None
    assert find_not_co_disk_evidence(cycle_union([3, 5])) is not None


# --- stand-alone cases ----------------------------------------------------------


def test_branch_on_star():
    star = complete_bipartite(1, 5)
    mis = branch_high_degree(star, 3)
    assert mis == frozenset(range(1, 6))


def test_branch_high_degree_matches_brute_force():
    rng = random.Random(2)
    for _ in range(300):
        h = random_graph(rng, rng.randint(0, 14))
        assert h.weight_of(branch_high_degree(h, 3)) == brute.mis_value(h)


def test_case_ii_examples():
    assert len(mis_via_occ(complete_bipartite(2, 3))) == 3
    assert len(mis_via_occ(cycle_graph(5))) == 2


def test_case_iii_examples():
    assert len(mis_via_ncc(cycle_graph(5))) == 2
    assert len(mis_via_ncc(cycle_union([4, 6, 5]))) == 7
    h = cycle_union([9, 9])
    mis = mis_via_ncc(h)
    assert len(mis) == 8 and h.is_independent(mis)


def test_cases_match_oracle_on_builder_complements():
    for lengths, rep, g in builder_instances(16):
        h = complement(g)
        want = brute.mis_value(h)
        assert h.weight_of(mis_via_occ(h)) == want, lengths
        assert h.weight_of(mis_via_ncc(h)) == want, lengths


def test_cap_is_signalled():
    with pytest.raises(EnumerationCapExceeded):
        mis_via_occ(cycle_union([9, 9]), cap=16)
    report = solve_max_clique(complement(cycle_union([9, 9])), SolveConfig(enumeration_cap=10))
    assert not report.optimal
    assert report.value <= 8
    assert report.stats["enumerated"] == 10


def test_enumeration_count_is_independent_subset_count():
    rng = random.Random(6)
    for _ in range(60):
        h = random_graph(rng, rng.randint(1, 10), p=0.3)
        chosen = [v for v in range(h.n) if rng.random() < 0.6]
        assert count_independent_subsets(h, chosen) == brute.independent_subset_count(h, chosen)


# --- oracle agreement -------------------------------------------------------------


def test_exact_mode_on_random_graphs():
    rng = random.Random(10)
    for _ in range(200):
        g = random_graph(rng, rng.randint(0, 14), weighted=rng.random() < 0.3)
        report = solve_max_clique(g)
        assert report.optimal
        assert g.is_clique(report.clique)
        assert report.value == g.weight_of(report.clique) == brute.clique_value(g)
        if report.certificate is not None:
            assert report.certificate.is_valid_for(complement(g))


@given(graphs(max_n=11, weighted=True), st.sampled_from(["winwin_cuberoot", "qptas_log4", "fixed(2)", "fixed(5)"]))
def test_exact_mode_property(g, policy):
    report = solve_max_clique(g, SolveConfig(branch_threshold_policy=policy))
    assert report.value == brute.clique_value(g)


def test_exact_mode_without_bipartite_shortcut():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(rng, rng.randint(0, 12))
        cfg = SolveConfig(shortcut_bipartite=False, branch_threshold_policy="fixed(3)")
        assert solve_max_clique(g, cfg).value == brute.clique_value(g)


def test_unit_weights_agree_with_unweighted():
    rng = random.Random(14)
    for _ in range(50):
        g = random_graph(rng, rng.randint(0, 12))
        weighted = g.with_weights([Fraction(1)] * g.n)
        assert solve_max_clique(g).value == solve_max_clique(weighted).value


def test_weighted_disk_graph():
    rep_graph = disk_instances()[5][1]
    weights = [Fraction(v % 4 + 1, 2) for v in range(rep_graph.n)]
    g = rep_graph.with_weights(weights)
    assert solve_max_clique(g).value == brute.clique_value(g)


def test_disk_instances_satisfy_case_iii_precondition():
    for rep, g in disk_instances()[:200]:
        report = solve_max_clique(g)
        assert report.value == brute.clique_value(g)
        assert report.certificate is None
        for e in report.strategy_trace:
            if "residual_bipartite" in e:
                assert e["residual_bipartite"]


def test_chosen_enumeration_is_the_smaller_one():
    for rep, g in disk_instances()[:200]:
        report = solve_max_clique(g)
        for e in report.strategy_trace:
            if e["event"] in ("case_ii", "case_iii"):
                assert e["chosen_size"] == min(e["ncc_size"], e["cover_size"])
                if e["event"] == "case_iii":
                    assert e["ncc_size"] <= e["cover_size"]


# --- parallel and qptas --------------------------------------------------------------


def test_parallel_reports_are_identical():
    rng = random.Random(15)
    for _ in range(40):
        g = random_graph(rng, rng.randint(4, 14))
        serial = solve_max_clique(g, SolveConfig(branch_threshold_policy="fixed(2)"))
        parallel = solve_max_clique(g, SolveConfig(branch_threshold_policy="fixed(2)", threads=4))
        assert serial.strategy_trace == parallel.strategy_trace
        assert serial.clique == parallel.clique
        assert serial.value == parallel.value


def test_qptas_on_bipartite_complement_is_exact():
    g = complement(complete_bipartite(3, 4))
    report = solve_qptas_mode(g, Fraction(1, 2))
    assert report.value == 4
    assert report.stats["additive_bound"] == 0
    assert report.optimal


def test_qptas_on_complement_of_c4_c6_c5():
    g = complement(cycle_union([4, 6, 5]))
    report = solve_qptas_mode(g, Fraction(1, 10))
    assert 7 - report.stats["cover_size"] <= report.value <= 7


def test_qptas_guarantee_on_disk_instances():
    for rep, g in disk_instances()[:200]:
        opt = brute.clique_value(g)
        report = solve_qptas_mode(g, Fraction(1, 4))
        assert opt - report.stats["additive_bound"] <= report.value <= opt
        assert g.is_clique(report.clique)


def test_approx_mode_guarantee():
    rng = random.Random(16)
    for _ in range(100):
        g = random_graph(rng, rng.randint(0, 14), weighted=True)
        opt = brute.clique_value(g)
        report = solve_max_clique(g, SolveConfig(mode="approx", eps=Fraction(1, 2)))
        assert opt - report.stats["additive_bound"] <= report.value <= opt
        if report.optimal:
            assert report.value == opt


def test_empty_graph_solves():
    report = solve_max_clique(empty_graph(0))
    assert report.value == 0 and report.clique == frozenset()
