import json
import random
from fractions import Fraction

import pytest
from hypothesis import given

import brute
from instances import graphs, random_disks, random_general_points, random_graph
from diskclique import io
from diskclique.cli import main
from diskclique.construction import BuildPlan, build_with_report
from diskclique.geometry import Disk, Representation, intersection_graph
from diskclique.graph import complement, complete_graph, cycle_union, path_graph
from diskclique.hardness import Triangle
from diskclique.solver import solve_max_clique


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# --- rationals --------------------------------------------------------------------


def test_rationals_round_trip():
    for x in (Fraction(0), Fraction(-3), Fraction(22, 7), Fraction(-1, 1000)):
        assert io.parse_rational(io.format_rational(x)) == x
    assert io.parse_rational("0.125") == Fraction(1, 8)
    assert io.parse_rational("-2.5") == Fraction(-5, 2)


@pytest.mark.parametrize("bad", ["", "nan", "inf", "1/0", "x", "1//2"])
def test_bad_rationals(bad):
    with pytest.raises(io.ParseError):
        io.parse_rational(bad)


# --- graphs ------------------------------------------------------------------------


def test_k2():
    g = io.parse_graph("graph 2\nedge 0 1\n")
    assert g.n == 2 and g.edges() == [(0, 1)]


def test_comments_and_blank_lines():
    g = io.parse_graph("# a path\n\ngraph 3\nedge 0 1  # first\nedge 1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_weights_round_trip():
    g = io.parse_graph("graph 3\nweights 1 2/3 0.5\nedge 0 2\n")
    assert g.weights == (1, Fraction(2, 3), Fraction(1, 2))
    assert io.parse_graph(io.emit_graph(g)) == g


@pytest.mark.parametrize("text,line", [
    ("graph 2\nedge 0 0\n", 2),
    ("graph 2\nedge 0 1\nedge 0 1\n", 3),
    ("graph 2\nedge 0 2\n", 2),
    ("graph 2\nedge 1 0\n", 2),
    ("graph 2\nvertex 0\n", 2),
    ("edge 0 1\n", 1),
    ("graph 2\nedge 0 1\nweights 1 1\n", 3),
    ("graph 2\nweights 1\n", 2),
    ("graph 2\nweights 1 -1\n", 2),
    ("graph x\n", 1),
    ("graph 2\ngraph 2\n", 2),
])
def test_graph_parse_errors_name_line(text, line):
    with pytest.raises(io.ParseError) as err:
        io.parse_graph(text)
    assert err.value.line == line
    assert f"line {line}" in str(err.value)


def test_missing_header():
    with pytest.raises(io.ParseError):
        io.parse_graph("# nothing\n")


def test_graph_round_trip_random():
    rng = random.Random(8)
    for _ in range(100):
        g = random_graph(rng, rng.randint(0, 12), weighted=rng.random() < 0.5)
        assert io.parse_graph(io.emit_graph(g)) == g


@given(graphs(max_n=9, weighted=True))
def test_graph_round_trip_property(g):
    assert io.parse_graph(io.emit_graph(g)) == g


# --- disks, triangles, cycles ---------------------------------------------------------


def test_unit_pair():
    rep = io.parse_disks("disk 0 0 0 1\ndisk 1 1.5 0 1\n")
    assert intersection_graph(rep).edges() == [(0, 1)]


def test_negative_radius_rejected():
    with pytest.raises(io.ParseError) as err:
        io.parse_disks("disk 0 0 0 1\ndisk 1 0 0 -1\n")
    assert err.value.line == 2


@pytest.mark.parametrize("text", [
    "disk 0 0 0 0\n",
    "disk 0 0 0 1\ndisk 0 1 1 1\n",
    "disk 1 0 0 1\n",
    "disk 0 0 0\n",
    "",
])
def test_bad_disk_files(text):
    with pytest.raises(io.ParseError):
        io.parse_disks(text)


def test_disk_round_trip_random():
    rng = random.Random(4)
    for _ in range(100):
        rep = random_disks(rng, rng.randint(1, 12), grid=rng.random() < 0.3)
        back = io.parse_disks(io.emit_disks(rep))
        assert back.disks == rep.disks


def test_builder_output_round_trips_with_labels():
    rep = build_with_report(BuildPlan((4,), 3)).representation
    back = io.parse_disks(io.emit_disks(rep))
    assert back == rep


def test_triangles_round_trip():
    tris = [Triangle((0, 0), (1, 0), (0, Fraction(1, 3))), Triangle((5, 5), (-1, 2), (Fraction(7, 2), 0))]
    assert io.parse_triangles(io.emit_triangles(tris)) == tris
    with pytest.raises(io.ParseError) as err:
        io.parse_triangles("triangle 0 0 0 1 1 2 2\n")
    assert err.value.line == 1


def test_cycles_round_trip():
    cycles = [[(0, 0), (1, 0), (0, 1)], [(5, 5), (Fraction(13, 2), 5), (5, 7)]]
    assert io.parse_cycles(io.emit_cycles(cycles)) == cycles
    with pytest.raises(io.ParseError):
        io.parse_cycles("point 0 0\n")


def test_sniff():
    assert io.sniff_kind("# x\ngraph 1\n") == "graph"
    assert io.sniff_kind("disk 0 0 0 1\n") == "disks"
    assert io.sniff_kind("triangle 0 0 0 1 0 0 1\n") == "triangles"
    assert io.sniff_kind("cycle\n") == "cycles"
    with pytest.raises(io.ParseError):
        io.sniff_kind("polygon\n")


def test_report_keys_and_determinism():
    g = complement(cycle_union([9, 9]))
    a = io.report_json(solve_max_clique(g))
    b = io.report_json(solve_max_clique(g))
    assert a == b
    doc = json.loads(a)
    assert list(doc) == ["value", "clique", "optimal", "trace", "certificate", "stats"]
    assert doc["value"] == "8"
    assert doc["certificate"]["kind"] == "anticomplete_odd_cycles"
    assert len(doc["certificate"]["cycle_a"]) == 9


# --- CLI ----------------------------------------------------------------------------------


def test_cli_solve_complement_of_c4_c6_c5(tmp_path, capsys):
    path = _write(tmp_path, "g.txt", io.emit_graph(complement(cycle_union([4, 6, 5]))))
    out = str(tmp_path / "report.json")
    assert main(["solve", path, "--report", out]) == 0
    doc = json.loads(open(out).read())
    assert doc["value"] == "7" and doc["optimal"] is True
    assert "value 7" in capsys.readouterr().out


def test_cli_solve_capped_is_partial(tmp_path, capsys):
    path = _write(tmp_path, "g.txt", io.emit_graph(complement(cycle_union([9, 9]))))
    assert main(["solve", path, "--cap", "4"]) == 2
    doc = json.loads(capsys.readouterr().out)
    assert doc["optimal"] is False


def test_cli_solve_modes(tmp_path, capsys):
    path = _write(tmp_path, "g.txt", io.emit_graph(complement(cycle_union([4, 6, 5]))))
    assert main(["solve", path, "--mode", "qptas", "--eps", "1/4", "--threads", "2"]) in (0, 2)
    doc = json.loads(capsys.readouterr().out)
    assert doc["stats"]["eps"] == "1/4"
    assert main(["solve", path, "--mode", "approx", "--eps", "0"]) == 65
    assert main(["solve", path, "--policy", "sometimes"]) == 65


def test_cli_solve_disk_and_triangle_files(tmp_path, capsys):
    rep = Representation((Disk(0, 0, 1), Disk(1, 0, 1), Disk(9, 9, 1)))
    path = _write(tmp_path, "d.txt", io.emit_disks(rep))
    assert main(["solve", path]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "2"
    tris = [Triangle((0, 0), (2, 0), (0, 2)), Triangle((1, 0), (3, 0), (1, 2))]
    path = _write(tmp_path, "t.txt", io.emit_triangles(tris))
    assert main(["solve", path]) == 0
    assert json.loads(capsys.readouterr().out)["value"] == "2"


def test_cli_oracle(tmp_path, capsys):
    path = _write(tmp_path, "g.txt", io.emit_graph(complete_graph(4)))
    assert main(["oracle", path]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "value 4"
    big = _write(tmp_path, "big.txt", io.emit_graph(path_graph(30)))
    assert main(["oracle", big]) == 65
    assert main(["oracle", big, "--limit", "30"]) == 0


def test_cli_build_and_verify(tmp_path, capsys):
    disks = str(tmp_path / "d.txt")
    graph = str(tmp_path / "g.txt")
    svg = str(tmp_path / "d.svg")
    assert main(["build-rep", "--even", "4,6", "--odd", "5", "--out", disks, "--graph-out", graph, "--svg", svg]) == 0
    assert main(["verify-rep", disks, graph]) == 0
    g = io.parse_graph(open(graph).read())
    assert brute.same_edges(g, complement(cycle_union([4, 6, 5])))
    assert open(svg).read().startswith("<?xml")
    wrong = _write(tmp_path, "w.txt", io.emit_graph(complement(cycle_union([4, 6, 5])).__class__.from_edges(15, [])))
    assert main(["verify-rep", disks, wrong]) == 1
    assert "mismatch" in capsys.readouterr().out


def test_cli_build_rejects_two_odd_cycles(capsys):
    assert main(["build-rep", "--even", "4", "--odd", "3,5"]) == 65
    assert "odd" in capsys.readouterr().err
    assert main(["build-rep", "--even", "5"]) == 65
    assert main(["build-rep", "--even", "4,x"]) == 64


def test_cli_audit(tmp_path, capsys):
    pts = random_general_points(random.Random(5), 8)
    path = _write(tmp_path, "c.txt", io.emit_cycles([pts[:3], pts[3:]]))
    assert main(["audit-odd-cycles", path]) == 0
    out = capsys.readouterr().out
    assert "consistent true" in out
    assert any(line.startswith("violated ") for line in out.splitlines())
    one = _write(tmp_path, "one.txt", io.emit_cycles([pts[:3]]))
    assert main(["audit-odd-cycles", one]) == 65
    even = _write(tmp_path, "even.txt", io.emit_cycles([pts[:4], pts[4:7]]))
    assert main(["audit-odd-cycles", even]) == 65


def test_cli_generators_agree(tmp_path):
    src = _write(tmp_path, "src.txt", io.emit_graph(cycle_union([3, 3])))
    co = str(tmp_path / "co.txt")
    tri = str(tmp_path / "tri.txt")
    assert main(["gen-co2sub", src, "--out", co]) == 0
    assert main(["gen-triangles", src, "--out", tri, "--svg", str(tmp_path / "t.svg")]) == 0
    h = io.parse_graph(open(co).read())
    assert (h.n, h.edge_count) == (18, 135)
    from diskclique.hardness import triangle_intersection_graph
    assert brute.same_edges(triangle_intersection_graph(io.parse_triangles(open(tri).read())), h)
    empty = _write(tmp_path, "e.txt", "graph 3\n")
    assert main(["gen-triangles", empty]) == 65


def test_cli_exit_codes_for_bad_input(tmp_path):
    bad = _write(tmp_path, "bad.txt", "graph 2\nedge 0 0\n")
    assert main(["solve", bad]) == 64
    assert main(["solve", str(tmp_path / "missing.txt")]) == 66
    assert main(["frobnicate"]) == 64
    assert main(["solve"]) == 64
    cyc = _write(tmp_path, "c.txt", "cycle\npoint 0 0\n")
    assert main(["solve", cyc]) == 65
