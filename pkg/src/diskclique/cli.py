"""Command line entry point: ``diskclique <subcommand> ...``.

Exit codes: 0 success, 1 ``verify-rep`` mismatch, 2 capped (non-optimal)
solve, 3 internal verification failure, 64 parse error, 65 precondition
violation, 66 unreadable input file.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import io
from .construction import BuildFailure, BuildPlan, build_with_report
from .geometry import GeometryError, audit_two_odd_cycles, intersection_graph, verify_representation
from .graph import OracleLimitError, brute_force_max_clique, co_two_subdivision, two_subdivision
from .hardness import GadgetFailure, build_triangle_gadget, triangle_intersection_graph
from .solver import SolveConfig, SolverError, solve_max_clique
from .svg import representation_svg, triangles_svg

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARTIAL = 2
EXIT_VERIFY = 3
EXIT_PARSE = 64
EXIT_PRECONDITION = 65
EXIT_NOINPUT = 66


class _Precondition(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are parse errors here; 2 already means a capped solve
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_instance(path: str):
    """Any instance file as a graph: graphs directly, shapes via intersection."""
    text = _read(path)
    kind = io.sniff_kind(text)
    if kind == "graph":
        return io.parse_graph(text)
    if kind == "disks":
        return intersection_graph(io.parse_disks(text))
    if kind == "triangles":
        return triangle_intersection_graph(io.parse_triangles(text))
    raise _Precondition(f"{path}: a {kind} file is not a solvable instance")


def _lengths(text: str) -> tuple:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise io.ParseError(f"bad length list {text!r}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_solve(args) -> int:
    g = _load_instance(args.instance)
    try:
        cfg = SolveConfig(
            mode=args.mode,
            eps=io.parse_rational(args.eps) if args.eps is not None else (None if args.mode == "exact" else Fraction(1, 2)),
            branch_threshold_policy=args.policy,
            enumeration_cap=args.cap,
            threads=args.threads,
            parallel=args.threads > 1,
        )
    except ValueError as exc:
        raise _Precondition(str(exc)) from None
    report = solve_max_clique(g, cfg)
    text = io.report_json(report)
    if args.report:
        _write(args.report, text)
        print(f"value {io.format_rational(report.value)} optimal {str(report.optimal).lower()}")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.optimal else EXIT_PARTIAL


def cmd_oracle(args) -> int:
    g = _load_instance(args.instance)
    try:
        clique = brute_force_max_clique(g, args.limit)
    except OracleLimitError as exc:
        raise _Precondition(str(exc)) from None
    print(f"value {io.format_rational(g.weight_of(clique))}")
    print("clique " + " ".join(str(v) for v in sorted(clique)))
    return EXIT_OK


def cmd_build_rep(args) -> int:
    evens, odds = _lengths(args.even), _lengths(args.odd)
    try:
        plan = BuildPlan(evens, odds if odds else None, **({"epsilon_ratio": io.parse_rational(args.epsilon)}
                                                         if args.epsilon else {}))
    except GeometryError as exc:  # includes TwoOddCyclesError
        raise _Precondition(str(exc)) from None
    try:
        report = build_with_report(plan)
    except BuildFailure as exc:
        print(f"build failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    _write(args.out, io.emit_disks(report.representation))
    if args.graph_out:
        _write(args.graph_out, io.emit_graph(report.target))
    if args.svg:
        _write(args.svg, representation_svg(report.representation))
    print(f"verified {len(report.representation)} disks after {report.attempts} attempt(s)", file=sys.stderr)
    return EXIT_OK


def cmd_audit(args) -> int:
    cycles = io.parse_cycles(_read(args.cycle_file))
    if len(cycles) != 2:
        raise _Precondition(f"expected exactly two cycles, got {len(cycles)}")
    try:
        violation = audit_two_odd_cycles(cycles[0], cycles[1])
    except GeometryError as exc:
        if "contradicted" in str(exc):
            print(f"audit failed: {exc}", file=sys.stderr)
            return EXIT_VERIFY
        raise _Precondition(str(exc)) from None
    led = violation.parity_ledger
    fmt = lambda xs: " ".join(str(x) for x in xs)
    print(f"a  {fmt(led.a)}")
    print(f"b  {fmt(led.b)}")
    print(f"c  {fmt(led.c)}")
    print(f"a' {fmt(led.a_prime)}")
    print(f"b' {fmt(led.b_prime)}")
    print(f"c' {fmt(led.c_prime)}")
    for key, value in led.sums.items():
        print(f"sum {key} {value}")
    print(f"consistent {str(led.consistent()).lower()}")
    i, j = violation.pair
    seg = lambda s: " ".join(f"({io.format_rational(p[0])}, {io.format_rational(p[1])})" for p in s)
    print(f"violated {i} {j}: {seg(violation.segment_a)} | {seg(violation.segment_b)}")
    print(f"violated_pairs {len(violation.violated_pairs)}")
    return EXIT_OK if led.consistent() else EXIT_VERIFY


def cmd_gen_co2sub(args) -> int:
    g = io.parse_graph(_read(args.graph))
    h = co_two_subdivision(g)
    _write(args.out, io.emit_graph(h))
    return EXIT_OK


def cmd_gen_triangles(args) -> int:
    g = io.parse_graph(_read(args.graph))
    if g.edge_count < 1:
        raise _Precondition("the gadget needs a graph with at least one edge")
    try:
        gadget = build_triangle_gadget(g)
    except GadgetFailure as exc:
        print(f"gadget failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    _write(args.out, io.emit_triangles(gadget.triangles))
    if args.svg:
        _write(args.svg, triangles_svg(gadget.triangles, g.n, two_subdivision(g).labels))
    print(f"verified {len(gadget.triangles)} triangles", file=sys.stderr)
    return EXIT_OK


def cmd_verify_rep(args) -> int:
    rep = io.parse_disks(_read(args.disks))
    g = io.parse_graph(_read(args.graph))
    try:
        check = verify_representation(rep, g)
    except GeometryError as exc:
        raise _Precondition(str(exc)) from None
    if check.ok:
        print("ok")
        return EXIT_OK
    print(f"mismatch {check.mismatch.describe()}")
    return EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="diskclique", description="Maximum clique on disk graphs, with certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="maximum (weighted) clique of an instance")
    s.add_argument("instance", help="graph, disk or triangle file ('-' for stdin)")
    s.add_argument("--mode", choices=("exact", "approx", "qptas"), default="exact")
    s.add_argument("--eps", help="accuracy parameter for approx/qptas (rational, default 1/2)")
    s.add_argument("--cap", type=int, default=1 << 22, help="enumeration cap")
    s.add_argument("--policy", default=None, help="winwin_cuberoot | qptas_log4 | fixed(k)")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--report", help="write the JSON report here instead of stdout")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="brute-force maximum clique (small inputs only)")
    s.add_argument("instance")
    s.add_argument("--limit", type=int, default=24)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("build-rep", help="disks for the complement of a union of cycles")
    s.add_argument("--even", default="", help="comma separated even lengths")
    s.add_argument("--odd", default="", help="a single odd length")
    s.add_argument("--epsilon", help="center gap / radius (default 1/1000)")
    s.add_argument("--out", help="disk file (default stdout)")
    s.add_argument("--graph-out", help="also write the target graph")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_build_rep)

    s = sub.add_parser("audit-odd-cycles", help="parity audit of two odd cycles of centers")
    s.add_argument("cycle_file")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("gen-co2sub", help="co-2-subdivision of a graph")
    s.add_argument("graph")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen_co2sub)

    s = sub.add_parser("gen-triangles", help="filled triangles realising the co-2-subdivision")
    s.add_argument("graph")
    s.add_argument("--out")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_gen_triangles)

    s = sub.add_parser("verify-rep", help="check that disks realise a graph")
    s.add_argument("disks")
    s.add_argument("graph")
    s.set_defaults(func=cmd_verify_rep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    try:
        return args.func(args)
    except io.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except _Precondition as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except SolverError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
