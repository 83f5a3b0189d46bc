"""Abstract graphs and the polynomial-time primitives the solver is built on.

Vertices are always ``0..n-1``.  Weights are non-negative ``Fraction`` values
and default to 1.  Internally most routines work on integer bitmasks, which
keeps the exponential parts of the solver cheap at desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

DEFAULT_ORACLE_LIMIT = 24


class GraphError(ValueError):
    """Raised when a graph violates its invariants."""


class InvalidColoringError(ValueError):
    """A supplied two-coloring puts both ends of an edge on the same side."""

    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge[0]}-{edge[1]} joins two vertices of the same side")


class OracleLimitError(ValueError):
    pass


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    adjacency: tuple
    weights: tuple = field(default=())

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise GraphError("vertex_count must be non-negative")
        adjacency = tuple(tuple(sorted(set(nbrs))) for nbrs in self.adjacency)
        if len(adjacency) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adjacency)}")
        for v, nbrs in enumerate(adjacency):
            for u in nbrs:
                if not 0 <= u < n:
                    raise GraphError(f"vertex id {u} out of range")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                if v not in adjacency[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        weights = self.weights
        if not weights:
            weights = (Fraction(1),) * n
        weights = tuple(Fraction(w) for w in weights)
        if len(weights) != n:
            raise GraphError(f"expected {n} weights, got {len(weights)}")
        if any(w < 0 for w in weights):
            raise GraphError("weights must be non-negative")
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, weights: Optional[Sequence] = None) -> "Graph":
        rows = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(rows), tuple(weights) if weights is not None else ())

    @property
    def n(self) -> int:
        return self.vertex_count

    @cached_property
    def masks(self) -> tuple:
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def edges(self) -> list:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @property
    def is_unit_weighted(self) -> bool:
        return all(w == 1 for w in self.weights)

    def weight_of(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.weights[v] for v in vertices), Fraction(0))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def is_independent(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return not any(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def with_weights(self, weights: Sequence) -> "Graph":
        return Graph(self.n, self.adjacency, tuple(weights))


@dataclass(frozen=True)
class OddCycle:
    vertices: tuple

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 3 or len(vs) % 2 == 0:
            raise GraphError(f"odd cycle needs odd length >= 3, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise GraphError("odd cycle repeats a vertex")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def is_cycle_in(self, g: Graph) -> bool:
        vs = self.vertices
        return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def is_chordless_in(self, g: Graph) -> bool:
        vs = self.vertices
        k = len(vs)
        for i, j in combinations(range(k), 2):
            if j - i in (1, k - 1):
                continue
            if g.has_edge(vs[i], vs[j]):
                return False
        return True


@dataclass(frozen=True)
class OddCycleCover:
    vertices: frozenset
    rounds: int
    cycles: tuple = ()


@dataclass(frozen=True)
class Subdivision:
    """A 2-subdivision together with the bookkeeping that ties it to its source.

    ``edge_vertices[k]`` is the pair ``(plus, minus)`` inserted on
    ``source_edges[k] = (i, j)``; the path is ``i, plus, minus, j``.
    """

    graph: Graph
    source_edges: tuple
    edge_vertices: tuple
    labels: tuple


# ---------------------------------------------------------------------------
# small constructors


def empty_graph(n: int) -> Graph:
    return Graph(n, tuple(() for _ in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges, weights, offset = [], [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        weights.extend(g.weights)
        offset += g.n
    return Graph.from_edges(offset, edges, weights)


def cycle_union(lengths: Sequence[int]) -> Graph:
    """Disjoint union of cycles, laid out consecutively in the given order."""
    return disjoint_union(*(cycle_graph(k) for k in lengths))


# ---------------------------------------------------------------------------
# transforms


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    rows = []
    for v, mask in enumerate(g.masks):
        rows.append(tuple(_bits(full & ~mask & ~(1 << v))))
    return Graph(g.n, tuple(rows), g.weights)


def induced_subgraph(g: Graph, vertices: Iterable[int]):
    """Return ``(subgraph, originals)`` where ``originals[i]`` is the id in ``g``."""
    originals = sorted(set(vertices))
    index = {v: i for i, v in enumerate(originals)}
    rows = [tuple(index[u] for u in g.adjacency[v] if u in index) for v in originals]
    return Graph(len(originals), tuple(rows), tuple(g.weights[v] for v in originals)), originals


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> frozenset:
    out = set(vertices)
    for v in list(out):
        out.update(g.adjacency[v])
    return frozenset(out)


def two_subdivision(g: Graph) -> Subdivision:
    n = g.n
    source_edges = tuple(g.edges())
    m = len(source_edges)
    edges, edge_vertices = [], []
    labels = [f"v{i}" for i in range(n)]
    for k, (i, j) in enumerate(source_edges):
        plus, minus = n + 2 * k, n + 2 * k + 1
        edges += [(i, plus), (plus, minus), (minus, j)]
        edge_vertices.append((plus, minus))
        labels += [f"e{k}+", f"e{k}-"]
    # edge vertices are unit weighted; original weights carry over
    weights = list(g.weights) + [Fraction(1)] * (2 * m)
    h = Graph.from_edges(n + 2 * m, edges, weights)
    return Subdivision(h, source_edges, tuple(edge_vertices), tuple(labels))


def co_two_subdivision(g: Graph) -> Graph:
    return complement(two_subdivision(g).graph)


# ---------------------------------------------------------------------------
# bipartiteness and odd cycles


def is_bipartite(g: Graph) -> Optional[tuple]:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] != -1:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u in g.adjacency[v]:
                if side[u] == -1:
                    side[u] = 1 - side[v]
                    queue.append(u)
                elif side[u] == side[v]:
                    return None
    return tuple(side)


def _double_cover_distances(g: Graph, source: int, parity: int):
    """BFS distances in the bipartite double cover from ``(source, parity)``."""
    dist = [[-1, -1] for _ in range(g.n)]
    dist[source][parity] = 0
    queue = deque([(source, parity)])
    while queue:
        v, p = queue.popleft()
        d = dist[v][p]
        for u in g.adjacency[v]:
            if dist[u][1 - p] == -1:
                dist[u][1 - p] = d + 1
                queue.append((u, 1 - p))
    return dist


def shortest_odd_cycle(g: Graph) -> Optional[OddCycle]:
    """A shortest odd cycle, or ``None`` when ``g`` is bipartite.

    The odd girth is the shortest odd closed walk, found by BFS on the
    bipartite double cover from every vertex.  Among the optimal cycles the
    one through the lowest possible start vertex is returned, read from that
    vertex in lexicographically smallest order.  A shortest odd closed walk
    is always a chordless simple cycle.
    """
    best_len, best_start = None, None
    for s in range(g.n):
        d = _double_cover_distances(g, s, 0)[s][1]
        if d > 0 and (best_len is None or d < best_len):
            best_len, best_start = d, s
            if d == 3:
                break
    if best_len is None:
        return None
    s = best_start
    to_target = _double_cover_distances(g, s, 1)
    walk, v, p = [s], s, 0
    for remaining in range(best_len - 1, 0, -1):
        v = next(u for u in g.adjacency[v] if to_target[u][1 - p] == remaining)
        p = 1 - p
        walk.append(v)
    return OddCycle(tuple(walk))


def odd_cycle_cover(g: Graph) -> OddCycleCover:
    """Repeatedly delete the closed neighbourhood of a shortest odd cycle."""
    alive = list(range(g.n))
    cover, cycles, rounds = set(), [], 0
    current = g
    while True:
        cycle = shortest_odd_cycle(current)
        if cycle is None:
            break
        rounds += 1
        removed = closed_neighborhood(current, cycle.vertices)
        cycles.append(OddCycle(tuple(alive[v] for v in cycle.vertices)))
        cover.update(alive[v] for v in removed)
        keep = [v for v in range(current.n) if v not in removed]
        current, local = induced_subgraph(current, keep)
        alive = [alive[v] for v in local]
    return OddCycleCover(frozenset(cover), rounds, tuple(cycles))


# ---------------------------------------------------------------------------
# bipartite maximum (weight) independent set


def _check_coloring(g: Graph, coloring) -> None:
    if coloring is None or len(coloring) != g.n:
        raise ValueError("coloring must assign a side to every vertex")
    for u, v in g.edges():
        if coloring[u] == coloring[v]:
            raise InvalidColoringError((u, v))


def maximum_matching(g: Graph, coloring) -> dict:
    """Kuhn's augmenting paths; returns ``{left: right}`` for matched pairs."""
    left = [v for v in range(g.n) if coloring[v] == 0]
    match_right: dict = {}

    def augment(v, seen):
        for u in g.adjacency[v]:
            if u in seen:
                continue
            seen.add(u)
            if u not in match_right or augment(match_right[u], seen):
                match_right[u] = v
                return True
        return False

    for v in left:
        augment(v, set())
    return {v: u for u, v in match_right.items()}


def _mis_by_matching(g: Graph, coloring) -> frozenset:
    # Konig: from unmatched left vertices, alternate non-matching / matching edges.
    matching = maximum_matching(g, coloring)
    mate = dict(matching)
    mate.update({u: v for v, u in matching.items()})
    left = [v for v in range(g.n) if coloring[v] == 0]
    reached = set()
    queue = deque(v for v in left if v not in mate)
    reached.update(queue)
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if u in reached:
                continue
            reached.add(u)
            w = mate.get(u)
            if w is not None and w not in reached:
                reached.add(w)
                queue.append(w)
    cover = {v for v in left if v not in reached} | {u for u in reached if coloring[u] == 1}
    return frozenset(v for v in range(g.n) if v not in cover)


def _mis_by_min_cut(g: Graph, coloring) -> frozenset:
    # source -> left (w), left -> right (inf), right -> sink (w); min cut = min cover
    n = g.n
    source, sink = n, n + 1
    infinite = sum(g.weights, Fraction(0)) + 1
    cap: dict = {}
    nbrs: list = [set() for _ in range(n + 2)]

    def add(a, b, c):
        cap[(a, b)] = cap.get((a, b), Fraction(0)) + c
        cap.setdefault((b, a), Fraction(0))
        nbrs[a].add(b)
        nbrs[b].add(a)

    for v in range(n):
        if coloring[v] == 0:
            add(source, v, g.weights[v])
            for u in g.adjacency[v]:
                add(v, u, infinite)
        else:
            add(v, sink, g.weights[v])
    order = [sorted(s) for s in nbrs]
    while True:
        parent = {source: None}
        queue = deque([source])
        while queue and sink not in parent:
            a = queue.popleft()
            for b in order[a]:
                if b not in parent and cap[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if sink not in parent:
            break
        push, b = infinite, sink
        while parent[b] is not None:
            push = min(push, cap[(parent[b], b)])
            b = parent[b]
        b = sink
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= push
            cap[(b, a)] += push
            b = a
    source_side = set(parent)
    return frozenset(
        v for v in range(n) if (coloring[v] == 0) == (v in source_side)
    )


def max_independent_set_bipartite(g: Graph, coloring=None) -> frozenset:
    """Maximum-weight independent set of a bipartite graph.

    Unit weights go through a maximum matching and the Konig cover; anything
    else through an exact rational minimum cut.
    """
    if coloring is None:
        coloring = is_bipartite(g)
        if coloring is None:
            raise ValueError("graph is not bipartite")
    _check_coloring(g, coloring)
    if g.n == 0:
        return frozenset()
    if g.is_unit_weighted:
        return _mis_by_matching(g, coloring)
    return _mis_by_min_cut(g, coloring)


# ---------------------------------------------------------------------------
# exhaustive oracle


def brute_force_max_clique(g: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> frozenset:
    """Maximum-weight clique by pivoted Bron-Kerbosch over all maximal cliques."""
    if g.n > limit:
        raise OracleLimitError(f"oracle refuses n={g.n} > limit {limit}")
    masks = g.masks
    best = [Fraction(-1), ()]

    def visit(r: int, p: int, x: int):
        if not p and not x:
            clique = tuple(_bits(r))
            value = g.weight_of(clique)
            if value > best[0] or (value == best[0] and clique < best[1]):
                best[0], best[1] = value, clique
            return
        pivot = max(_bits(p | x), key=lambda u: bin(p & masks[u]).count("1"))
        for v in list(_bits(p & ~masks[pivot])):
            visit(r | (1 << v), p & masks[v], x & masks[v])
            p &= ~(1 << v)
            x |= 1 << v

    visit(0, (1 << g.n) - 1, 0)
    return frozenset(best[1])
