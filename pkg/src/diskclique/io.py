"""Plain-text instance formats and JSON reports.

Every number is a rational written ``p/q`` or as an integer; decimals are
accepted on input and converted exactly.  Blank lines and ``#`` comments are
ignored everywhere.

graph::

    graph 3
    weights 1 1 5/2
    edge 0 1
    edge 1 2

disks (``disk <id> <x> <y> <r> [label]``), triangles
(``triangle <id> x1 y1 x2 y2 x3 y3``) and odd-cycle point files
(``cycle`` starts a cycle, ``point <x> <y>`` adds a point) follow the same
conventions.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .geometry import Disk, GeometryError, Representation
from .graph import Graph, GraphError
from .hardness import Triangle
from .solver import SolveReport


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(token: str, line=None) -> Fraction:
    t = token.strip()
    if not t or any(word in t.lower() for word in ("nan", "inf")):
        raise ParseError(f"not a rational number: {token!r}", line)
    try:
        return Fraction(t)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {token!r}", line) from None


def _int(token: str, line) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", line) from None


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield number, body.split()


def sniff_kind(text: str) -> str:
    """``graph``, ``disks``, ``triangles`` or ``cycles`` from the first keyword."""
    for number, words in _lines(text):
        kind = {"graph": "graph", "disk": "disks", "triangle": "triangles",
                "cycle": "cycles", "point": "cycles"}.get(words[0])
        if kind is None:
            raise ParseError(f"unknown instance keyword {words[0]!r}", number)
        return kind
    raise ParseError("empty instance file")


# ---------------------------------------------------------------------------
# graphs


def parse_graph(text: str) -> Graph:
    n = None
    weights = None
    edges, seen = [], set()
    for number, words in _lines(text):
        key = words[0]
        if key == "graph":
            if n is not None:
                raise ParseError("second graph header", number)
            if len(words) != 2:
                raise ParseError("expected: graph <n>", number)
            n = _int(words[1], number)
            if n < 0:
                raise ParseError("vertex count must be non-negative", number)
            continue
        if n is None:
            raise ParseError("file must start with 'graph <n>'", number)
        if key == "weights":
            if weights is not None:
                raise ParseError("weights given twice", number)
            if edges:
                raise ParseError("weights must come before edges", number)
            if len(words) != n + 1:
                raise ParseError(f"expected {n} weights, got {len(words) - 1}", number)
            weights = [parse_rational(w, number) for w in words[1:]]
            if any(w < 0 for w in weights):
                raise ParseError("weights must be non-negative", number)
        elif key == "edge":
            if len(words) != 3:
                raise ParseError("expected: edge <u> <v>", number)
            u, v = _int(words[1], number), _int(words[2], number)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", number)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range 0..{n - 1}", number)
            if u > v:
                raise ParseError(f"edge must be written with u < v, got {u} {v}", number)
            if (u, v) in seen:
                raise ParseError(f"duplicate edge {u} {v}", number)
            seen.add((u, v))
            edges.append((u, v))
        else:
            raise ParseError(f"unknown line {key!r}", number)
    if n is None:
        raise ParseError("missing 'graph <n>' header")
    try:
        return Graph.from_edges(n, edges, weights)
    except GraphError as exc:
        raise ParseError(str(exc)) from None


def emit_graph(g: Graph) -> str:
    out = [f"graph {g.n}"]
    if not g.is_unit_weighted:
        out.append("weights " + " ".join(format_rational(w) for w in g.weights))
    out += [f"edge {u} {v}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# disks and triangles


def _dense(records: dict, what: str):
    n = len(records)
    missing = [i for i in range(n) if i not in records]
    if missing:
        raise ParseError(f"{what} ids must be 0..{n - 1}; missing {missing[0]}")
    return [records[i] for i in range(n)]


def parse_disks(text: str) -> Representation:
    records = {}
    for number, words in _lines(text):
        if words[0] != "disk" or len(words) not in (5, 6):
            raise ParseError("expected: disk <id> <x> <y> <r> [label]", number)
        ident = _int(words[1], number)
        if ident in records:
            raise ParseError(f"duplicate disk id {ident}", number)
        x, y, r = (parse_rational(w, number) for w in words[2:5])
        if r <= 0:
            raise ParseError(f"radius must be positive, got {format_rational(r)}", number)
        records[ident] = (Disk(x, y, r), words[5] if len(words) == 6 else None)
    if not records:
        raise ParseError("no disks")
    rows = _dense(records, "disk")
    labels = tuple(lbl for _, lbl in rows)
    if any(lbl is None for lbl in labels):
        labels = None
    try:
        return Representation(tuple(d for d, _ in rows), labels)
    except GeometryError as exc:
        raise ParseError(str(exc)) from None


def emit_disks(rep: Representation) -> str:
    out = []
    for i, d in enumerate(rep.disks):
        fields = [f"disk {i}", format_rational(d.center_x), format_rational(d.center_y), format_rational(d.radius)]
        if rep.labels is not None:
            # "#" would start a comment when read back
            fields.append(str(rep.labels[i]).replace(" ", "_").replace("#", "_"))
        out.append(" ".join(fields))
    return "\n".join(out) + "\n"


def parse_triangles(text: str) -> list:
    records = {}
    for number, words in _lines(text):
        if words[0] != "triangle" or len(words) != 8:
            raise ParseError("expected: triangle <id> x1 y1 x2 y2 x3 y3", number)
        ident = _int(words[1], number)
        if ident in records:
            raise ParseError(f"duplicate triangle id {ident}", number)
        c = [parse_rational(w, number) for w in words[2:]]
        try:
            records[ident] = Triangle((c[0], c[1]), (c[2], c[3]), (c[4], c[5]))
        except GeometryError as exc:
            raise ParseError(str(exc), number) from None
    if not records:
        raise ParseError("no triangles")
    return _dense(records, "triangle")


def emit_triangles(triangles) -> str:
    out = []
    for i, t in enumerate(triangles):
        coords = " ".join(format_rational(c) for p in t.points for c in p)
        out.append(f"triangle {i} {coords}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# odd cycle point files


def parse_cycles(text: str) -> list:
    cycles = []
    for number, words in _lines(text):
        if words[0] == "cycle" and len(words) == 1:
            cycles.append([])
        elif words[0] == "point" and len(words) == 3:
            if not cycles:
                raise ParseError("'point' before any 'cycle'", number)
            cycles[-1].append((parse_rational(words[1], number), parse_rational(words[2], number)))
        else:
            raise ParseError("expected 'cycle' or 'point <x> <y>'", number)
    return cycles


def emit_cycles(cycles) -> str:
    out = []
    for cyc in cycles:
        out.append("cycle")
        out += [f"point {format_rational(x)} {format_rational(y)}" for x, y in cyc]
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# reports


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    return x


def report_dict(report: SolveReport) -> dict:
    cert = None
    if report.certificate is not None:
        cert = {
            "kind": "anticomplete_odd_cycles",
            "cycle_a": list(report.certificate.cycle_a.vertices),
            "cycle_b": list(report.certificate.cycle_b.vertices),
        }
    return {
        "value": format_rational(report.value),
        "clique": sorted(report.clique),
        "optimal": report.optimal,
        "trace": _jsonable(list(report.strategy_trace)),
        "certificate": cert,
        "stats": _jsonable(report.stats),
    }


def report_json(report: SolveReport) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"
