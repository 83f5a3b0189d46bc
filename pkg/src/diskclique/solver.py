"""Maximum (weighted) clique on disk graphs through independent sets of the complement.

The pipeline works on ``H = complement(G)``.  While ``H`` has a vertex of
high degree we branch on it: either it joins the independent set (drop its
closed neighbourhood) or it is discarded.  Once every degree is below the
threshold, one of two enumerations finishes the job:

* case (ii): guess the part of the answer inside an odd cycle cover ``X``;
* case (iii): guess the part inside ``N[C]`` for a shortest odd cycle ``C``.

In both cases the rest of the graph is bipartite, so each guess is completed
by a matching or min-cut computation.  The smaller of the two sets is used.

When ``H - N[C]`` is not bipartite the input cannot be a disk graph; we keep
the two anticomplete odd cycles as evidence and fall back to case (ii), so the
answer stays exact on any graph.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .graph import (
    Graph,
    GraphError,
    OddCycle,
    _bits,
    closed_neighborhood,
    complement,
    induced_subgraph,
    is_bipartite,
    max_independent_set_bipartite,
    odd_cycle_cover,
    shortest_odd_cycle,
)

DEFAULT_ENUMERATION_CAP = 1 << 22
MODES = ("exact", "approx", "qptas")
_POLICY_NAMES = ("winwin_cuberoot", "qptas_log4")


class SolverError(RuntimeError):
    """The solver produced something that failed its own verification."""


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, needed, cap):
        self.needed, self.cap = needed, cap
        super().__init__(f"enumeration over a set of size {needed} exceeds cap {cap}")


def parse_policy(policy):
    """Normalise a threshold policy to a name or ``("fixed", k)``."""
    if isinstance(policy, tuple) and len(policy) == 2 and policy[0] == "fixed":
        k = int(policy[1])
    elif isinstance(policy, int) and not isinstance(policy, bool):
        k = policy
    elif isinstance(policy, str) and policy in _POLICY_NAMES:
        return policy
    elif isinstance(policy, str) and (m := re.fullmatch(r"fixed[(:=]?\s*(\d+)\s*\)?", policy.strip())):
        k = int(m.group(1))
    else:
        raise ValueError(f"unknown branch threshold policy {policy!r}")
    if k < 1:
        raise ValueError("fixed branch threshold must be >= 1")
    return ("fixed", k)


def branch_threshold(policy, n: int) -> int:
    """Smallest degree that triggers branching, for ``n`` vertices in the input.

    ``winwin_cuberoot`` compares exactly: ``d >= n^(1/3)`` iff ``d^3 >= n``.
    ``qptas_log4`` uses natural logs and never goes below 1.
    """
    policy = parse_policy(policy)
    if isinstance(policy, tuple):
        return policy[1]
    if policy == "winwin_cuberoot":
        d = 1
        while d ** 3 < n:
            d += 1
        return d
    if n <= 2:  # ln n <= 1, the bound is meaningless here
        return 1
    return max(1, math.ceil(n / math.log(n) ** 4))


@dataclass(frozen=True)
class SolveConfig:
    mode: str = "exact"
    eps: Optional[Fraction] = None
    branch_threshold_policy: object = None  # None picks the mode's default
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP
    parallel: bool = False
    threads: int = 1
    shortcut_bipartite: bool = True  # stop branching once the subproblem is bipartite

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.eps is not None:
            object.__setattr__(self, "eps", Fraction(self.eps))
            if self.eps <= 0:
                raise ValueError("eps must be positive")
        elif self.mode != "exact":
            raise ValueError(f"mode {self.mode} needs eps > 0")
        if self.enumeration_cap < 1:
            raise ValueError("enumeration_cap must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        policy = self.branch_threshold_policy
        if policy is None:
            policy = "qptas_log4" if self.mode == "qptas" else "winwin_cuberoot"
        object.__setattr__(self, "branch_threshold_policy", parse_policy(policy))

    @property
    def workers(self) -> int:
        return self.threads if self.parallel or self.threads > 1 else 1


@dataclass(frozen=True)
class NotCoDiskEvidence:
    """Two odd cycles of the complement with no edge between them.

    Such a pair never occurs in the complement of a disk graph, so this is a
    certificate that the solved graph is not a disk graph.
    """

    cycle_a: OddCycle
    cycle_b: OddCycle

    def problems(self, h: Graph) -> list:
        """Reasons the evidence fails on ``h`` (the complement); empty when sound."""
        out = []
        for name, cyc in (("cycle_a", self.cycle_a), ("cycle_b", self.cycle_b)):
            if any(v < 0 or v >= h.n for v in cyc.vertices):
                out.append(f"{name} has a vertex outside the graph")
                continue
            if not cyc.is_cycle_in(h):
                out.append(f"{name} is not a cycle")
            elif not cyc.is_chordless_in(h):
                out.append(f"{name} has a chord")
        a, b = set(self.cycle_a.vertices), set(self.cycle_b.vertices)
        if a & b:
            out.append("cycles share a vertex")
        elif not out:
            for u in a:
                for v in b:
                    if h.has_edge(u, v):
                        out.append(f"edge {u}-{v} joins the cycles")
        return out

    def is_valid_for(self, h: Graph) -> bool:
        return not self.problems(h)


@dataclass(frozen=True)
class SolveReport:
    clique: frozenset
    value: Fraction
    optimal: bool
    strategy_trace: tuple
    stats: dict
    certificate: Optional[NotCoDiskEvidence] = None

    def branch_prefix(self) -> tuple:
        return tuple(e for e in self.strategy_trace if e["event"] == "branch")


# ---------------------------------------------------------------------------
# helpers on bitmask views of H


def _better(a, b):
    """Max by value, ties to the lexicographically smaller sorted vertex tuple."""
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return a if a[1] <= b[1] else b


def _sub(h: Graph, alive: int):
    return induced_subgraph(h, _bits(alive))


def _count_bits(x: int) -> int:
    return bin(x).count("1")


def _inspect(h: Graph):
    """Shortest odd cycle, its closed neighbourhood and (maybe) evidence."""
    cycle = shortest_odd_cycle(h)
    if cycle is None:
        return None, frozenset(), None
    ncc = closed_neighborhood(h, cycle.vertices)
    rest, originals = induced_subgraph(h, [v for v in range(h.n) if v not in ncc])
    second = shortest_odd_cycle(rest)
    evidence = None
    if second is not None:
        evidence = NotCoDiskEvidence(cycle, OddCycle(tuple(originals[v] for v in second.vertices)))
    return cycle, ncc, evidence


def find_not_co_disk_evidence(h: Graph) -> Optional[NotCoDiskEvidence]:
    """Evidence from a shortest odd cycle of ``h``, or ``None`` if ``h - N[C]`` is bipartite."""
    return _inspect(h)[2]


def _enumerate(h: Graph, chosen, cap: int):
    """Best ``I + MIS(h - chosen - N(I))`` over independent ``I`` inside ``chosen``.

    ``h - chosen`` must be bipartite.  Returns ``(value, vertices, count, capped)``
    where ``count`` is the number of independent subsets visited.
    """
    chosen = sorted(chosen)
    masks = h.masks
    full = (1 << h.n) - 1
    chosen_mask = 0
    for v in chosen:
        chosen_mask |= 1 << v
    free = full & ~chosen_mask
    best = [(Fraction(-1), ())]
    count = [0]

    def finish(picked: int, blocked: int):
        count[0] += 1
        rest = free & ~blocked
        sub, originals = induced_subgraph(h, _bits(rest))
        mis = max_independent_set_bipartite(sub)
        verts = tuple(sorted(list(_bits(picked)) + [originals[v] for v in mis]))
        best[0] = _better(best[0], (h.weight_of(verts), verts))

    def walk(i: int, picked: int, blocked: int) -> bool:
        if i == len(chosen):
            if count[0] >= cap:
                return False
            finish(picked, blocked)
            return True
        v = chosen[i]
        if not (blocked >> v) & 1:
            if not walk(i + 1, picked | (1 << v), blocked | masks[v] | (1 << v)):
                return False
        return walk(i + 1, picked, blocked)

    complete = walk(0, 0, 0)
    value, verts = best[0]
    return value, frozenset(verts), count[0], not complete


def count_independent_subsets(h: Graph, vertices) -> int:
    """Number of independent subsets (empty set included) of ``vertices`` in ``h``."""
    vs = sorted(vertices)
    masks = h.masks

    def walk(i, blocked):
        if i == len(vs):
            return 1
        v = vs[i]
        total = walk(i + 1, blocked)
        if not (blocked >> v) & 1:
            total += walk(i + 1, blocked | masks[v])
        return total

    return walk(0, 0)


# ---------------------------------------------------------------------------
# stand-alone case solvers


def mis_via_occ(h: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> frozenset:
    """Case (ii): enumerate independent subsets of an odd cycle cover."""
    cover = odd_cycle_cover(h)
    if (1 << len(cover.vertices)) > cap:
        raise EnumerationCapExceeded(len(cover.vertices), cap)
    return _enumerate(h, cover.vertices, cap)[1]


def mis_via_ncc(h: Graph, cap: int = DEFAULT_ENUMERATION_CAP) -> frozenset:
    """Case (iii): enumerate independent subsets of ``N[C]``.

    Falls back to :func:`mis_via_occ` when ``h - N[C]`` is not bipartite,
    which already proves ``h`` is not the complement of a disk graph.
    """
    cycle, ncc, evidence = _inspect(h)
    if cycle is None:
        return max_independent_set_bipartite(h)
    if evidence is not None:
        return mis_via_occ(h, cap)
    if (1 << len(ncc)) > cap:
        raise EnumerationCapExceeded(len(ncc), cap)
    return _enumerate(h, ncc, cap)[1]


# ---------------------------------------------------------------------------
# win-win recursion


@dataclass
class _Outcome:
    value: Fraction
    vertices: tuple  # sorted ids of H
    optimal: bool
    trace: list
    loss_bound: Fraction = Fraction(0)
    cover_size: int = 0


@dataclass
class _Context:
    h: Graph
    cfg: SolveConfig
    min_degree: int
    evidence: list = field(default_factory=list)


def _pick_branch_vertex(ctx: _Context, alive: int) -> Optional[int]:
    masks = ctx.h.masks
    best_v, best_d = None, -1
    for v in _bits(alive):
        d = _count_bits(masks[v] & alive)
        if d > best_d:
            best_v, best_d = v, d
    if best_v is None or best_d < ctx.min_degree:
        return None
    if ctx.cfg.shortcut_bipartite and is_bipartite(_sub(ctx.h, alive)[0]) is not None:
        return None
    return best_v


def _frontier(ctx: _Context, alive: int, depth: int) -> _Outcome:
    h = ctx.h
    sub, originals = _sub(h, alive)
    back = lambda vs: tuple(sorted(originals[v] for v in vs))
    delta = sub.max_degree()
    if ctx.cfg.mode != "exact":
        cover = odd_cycle_cover(sub)
        rest, local = induced_subgraph(sub, [v for v in range(sub.n) if v not in cover.vertices])
        mis = back(local[v] for v in max_independent_set_bipartite(rest))
        loss = sub.weight_of(cover.vertices)
        event = {"event": "cover_deletion", "depth": depth, "n": sub.n, "delta": delta,
                 "cover_size": len(cover.vertices), "rounds": cover.rounds, "loss_bound": loss}
        return _Outcome(h.weight_of(mis), mis, loss == 0, [event], loss, len(cover.vertices))

    coloring = is_bipartite(sub)
    if coloring is not None:
        mis = back(max_independent_set_bipartite(sub, coloring))
        event = {"event": "bipartite", "depth": depth, "n": sub.n, "delta": delta}
        return _Outcome(h.weight_of(mis), mis, True, [event])

    cycle, ncc, evidence = _inspect(sub)
    cover = odd_cycle_cover(sub)
    residual_bipartite = evidence is None
    if evidence is not None:
        lift = lambda cyc: OddCycle(tuple(originals[v] for v in cyc.vertices))
        ctx.evidence.append(NotCoDiskEvidence(lift(evidence.cycle_a), lift(evidence.cycle_b)))
    # case (iii) is only sound when h - N[C] is bipartite; ties go to (iii)
    if residual_bipartite and len(ncc) <= len(cover.vertices):
        case, chosen = "case_iii", ncc
    else:
        case, chosen = "case_ii", cover.vertices
    value, mis, count, capped = _enumerate(sub, chosen, ctx.cfg.enumeration_cap)
    event = {
        "event": case, "depth": depth, "n": sub.n, "delta": delta, "c": len(cycle),
        "ncc_size": len(ncc), "cover_size": len(cover.vertices), "cover_rounds": cover.rounds,
        "residual_bipartite": residual_bipartite, "chosen_size": len(chosen),
        "enumerated": count, "capped": capped,
        "chosen": sorted(originals[v] for v in chosen), "vertices": list(originals),
    }
    mis = back(mis)
    return _Outcome(h.weight_of(mis), mis, not capped, [event])


def _combine(event: dict, inc: _Outcome, exc: _Outcome) -> _Outcome:
    a = (inc.value, inc.vertices)
    b = (exc.value, exc.vertices)
    value, verts = _better(a, b)
    return _Outcome(
        value, verts, inc.optimal and exc.optimal, [event] + inc.trace + exc.trace,
        max(inc.loss_bound, exc.loss_bound), max(inc.cover_size, exc.cover_size),
    )


def _branch_event(ctx, alive, v, depth):
    return {"event": "branch", "depth": depth, "vertex": v,
            "degree": _count_bits(ctx.h.masks[v] & alive), "n": _count_bits(alive),
            "threshold": ctx.min_degree}


def _with_vertex(ctx, out: _Outcome, v: int) -> _Outcome:
    verts = tuple(sorted(out.vertices + (v,)))
    return _Outcome(out.value + ctx.h.weights[v], verts, out.optimal, out.trace,
                    out.loss_bound, out.cover_size)


def _solve_serial(ctx: _Context, alive: int, depth: int) -> _Outcome:
    v = _pick_branch_vertex(ctx, alive)
    if v is None:
        return _frontier(ctx, alive, depth)
    event = _branch_event(ctx, alive, v, depth)
    inc = _with_vertex(ctx, _solve_serial(ctx, alive & ~ctx.h.masks[v] & ~(1 << v), depth + 1), v)
    exc = _solve_serial(ctx, alive & ~(1 << v), depth + 1)
    return _combine(event, inc, exc)


def _solve_parallel(ctx: _Context, alive: int, workers: int) -> _Outcome:
    """Expand the top of the branch tree, solve the leaves in a pool, fold in order."""
    split_depth = max(1, math.ceil(math.log2(workers)) + 1)
    plan = []  # nodes: ("leaf", alive, depth) or ("branch", event, v, inc, exc)

    def expand(a, depth):
        v = _pick_branch_vertex(ctx, a) if depth < split_depth else None
        if depth >= split_depth or v is None:
            plan.append((a, depth))
            return ("leaf", len(plan) - 1)
        event = _branch_event(ctx, a, v, depth)
        inc = expand(a & ~ctx.h.masks[v] & ~(1 << v), depth + 1)
        exc = expand(a & ~(1 << v), depth + 1)
        return ("branch", event, v, inc, exc)

    root = expand(alive, 0)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda job: _solve_serial(ctx, job[0], job[1]), plan))

    def fold(node):
        if node[0] == "leaf":
            return results[node[1]]
        _, event, v, inc, exc = node
        return _combine(event, _with_vertex(ctx, fold(inc), v), fold(exc))

    return fold(root)


def branch_high_degree(h: Graph, threshold: int, cap: int = DEFAULT_ENUMERATION_CAP) -> frozenset:
    """Maximum-weight independent set of ``h``, branching while some degree >= threshold.

    Branches on the highest-degree vertex (lowest id on ties); below the
    threshold the exact frontier solver takes over.
    """
    cfg = SolveConfig(branch_threshold_policy=("fixed", max(1, int(threshold))),
                      enumeration_cap=cap, shortcut_bipartite=False)
    ctx = _Context(h, cfg, max(1, int(threshold)))
    return frozenset(_solve_serial(ctx, (1 << h.n) - 1, 0).vertices)


def solve_max_clique(g: Graph, cfg: Optional[SolveConfig] = None) -> SolveReport:
    """Maximum-weight clique of ``g`` via independent sets of its complement."""
    cfg = cfg or SolveConfig()
    h = complement(g)
    n = g.n
    min_degree = branch_threshold(cfg.branch_threshold_policy, n)
    ctx = _Context(h, cfg, min_degree)

    cycle, ncc, root_evidence = _inspect(h)
    inspect = {
        "event": "inspect", "n": n, "delta": h.max_degree(),
        "c": len(cycle) if cycle else None, "ncc_size": len(ncc),
        "residual_bipartite": root_evidence is None,
    }
    alive = (1 << n) - 1
    if cfg.workers > 1:
        out = _solve_parallel(ctx, alive, cfg.workers)
    else:
        out = _solve_serial(ctx, alive, 0)

    clique = frozenset(out.vertices)
    value = g.weight_of(clique)
    if not g.is_clique(clique) or value != out.value:
        raise SolverError(f"solver produced an invalid clique {sorted(clique)}")
    certificate = root_evidence or (ctx.evidence[0] if ctx.evidence else None)
    if certificate is not None and not certificate.is_valid_for(h):
        raise SolverError(f"invalid evidence: {certificate.problems(h)}")

    trace = [inspect] + out.trace
    frontier = [e for e in trace if e["event"] in ("bipartite", "case_ii", "case_iii", "cover_deletion")]
    stats = {
        "n": n,
        "complement_edges": h.edge_count,
        "delta": inspect["delta"],
        "c": inspect["c"],
        "threshold": min_degree,
        "policy": cfg.branch_threshold_policy if isinstance(cfg.branch_threshold_policy, str)
        else f"fixed({cfg.branch_threshold_policy[1]})",
        "mode": cfg.mode,
        "branches": sum(1 for e in trace if e["event"] == "branch"),
        "leaves": len(frontier),
        "enumerated": sum(e.get("enumerated", 0) for e in frontier),
    }
    if cfg.mode != "exact":
        stats["cover_size"] = out.cover_size
        stats["additive_bound"] = out.loss_bound
        stats["eps"] = cfg.eps
        stats["base_case"] = "odd cycle cover deletion"
    return SolveReport(clique, value, out.optimal, tuple(trace), stats, certificate)


def solve_qptas_mode(g: Graph, eps, threads: int = 1) -> SolveReport:
    return solve_max_clique(g, SolveConfig(mode="qptas", eps=Fraction(eps), threads=threads))


__all__ = [
    "DEFAULT_ENUMERATION_CAP", "EnumerationCapExceeded", "NotCoDiskEvidence", "SolveConfig",
    "SolveReport", "SolverError", "branch_high_degree", "branch_threshold", "count_independent_subsets",
    "find_not_co_disk_evidence", "mis_via_ncc", "mis_via_occ", "parse_policy", "solve_max_clique",
    "solve_qptas_mode",
]
