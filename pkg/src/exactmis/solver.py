"""Branch-and-reduce search for a maximum independent set.

Levels, from the top:

* general: branch on a maximum-degree vertex while the maximum degree is >= 9;
* ``mis_theta`` for theta = 8, 7, 6: branch on a vertex of degree > theta,
  then on an optimal short edge, then on an optimal degree-theta vertex, and
  delegate to theta - 1 once the maximum degree drops below theta;
* fallback below degree 6: reduce and branch on a maximum-degree vertex.

Each search node returns its solution size together with the trace events
of its winning path, so one inversion at the root yields the witness.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Union

from .branching import (
    build_dagger,
    find_short_edges,
    plan_edge_branch,
    plan_vertex_branch,
    select_optimal_short_edge,
    select_optimal_vertex,
)
from .graph import Graph, GraphError
from .reductions import (
    EdgeBranchLeft,
    EdgeBranchRight,
    SolveTrace,
    TraceEvent,
    VertexBranchExclude,
    VertexBranchInclude,
    reconstruct_certificate,
    reduce_in_place,
)
from .weights import REFERENCE_WEIGHTS, WeightVector, measure

GENERAL = "general"
FALLBACK = "fallback"
Level = Union[int, str]

BRUTE_FORCE_LIMIT = 32


class SolveTimeout(RuntimeError):
    """The deadline passed between two search nodes."""


class MeasureViolation(AssertionError):
    """The measure grew across a reduction or failed to drop across a branch."""


@dataclass
class SearchStats:
    nodes: int = 0
    branch_nodes: int = 0
    vertex_branches: int = 0
    edge_branches: int = 0
    max_depth: int = 0
    reductions: Counter = field(default_factory=Counter)
    selector_calls: int = 0
    measure_checks: int = 0
    measure_violations: list[str] = field(default_factory=list)
    level_nodes: Counter = field(default_factory=Counter)

    def as_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "branch_nodes": self.branch_nodes,
            "vertex_branches": self.vertex_branches,
            "edge_branches": self.edge_branches,
            "max_depth": self.max_depth,
            "reductions": dict(sorted(self.reductions.items())),
            "selector_calls": self.selector_calls,
            "measure_checks": self.measure_checks,
            "measure_violations": len(self.measure_violations),
        }


@dataclass
class Solution:
    size: int
    witness: frozenset[int]
    stats: SearchStats
    trace: SolveTrace


@dataclass
class SolverOptions:
    """``check_measure`` turns on the measure instrumentation; ``strict``
    raises on the first violation instead of recording it."""

    check_measure: bool = False
    strict: bool = False
    split_components: bool = True
    timeout_s: float | None = None
    weights: dict[int, WeightVector] = field(default_factory=lambda: dict(REFERENCE_WEIGHTS))


def _vertex_count(g: Graph) -> float:
    return float(len(g))


class _Search:
    def __init__(self, options: SolverOptions) -> None:
        self.opt = options
        self.stats = SearchStats()
        self.deadline = None if options.timeout_s is None else time.monotonic() + options.timeout_s

    # measure ----------------------------------------------------------

    def _mu(self, level: Level) -> Callable[[Graph], float]:
        if level == GENERAL:
            return _vertex_count
        w = self.opt.weights[6 if level == FALLBACK else level]
        return lambda g: measure(g, w)

    def _violation(self, msg: str) -> None:
        self.stats.measure_violations.append(msg)
        if self.opt.strict:
            raise MeasureViolation(msg)

    # search -----------------------------------------------------------

    def node(self, g: Graph, level: Level, depth: int) -> tuple[int, list[TraceEvent]]:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SolveTimeout("time limit reached")
        st = self.stats
        st.nodes += 1
        st.level_nodes[str(level)] += 1
        st.max_depth = max(st.max_depth, depth)

        h = g.copy()
        trace = SolveTrace()
        if self.opt.check_measure:
            mu = self._mu(level)
            last = [mu(h)]

            def observer(event, graph, gained, mu=mu, last=last):
                now = mu(graph)
                self.stats.measure_checks += 1
                if now > last[0] + 1e-9:
                    self._violation(f"{type(event).__name__} raised the measure {last[0]:.5f} -> {now:.5f} at level {level}")
                last[0] = now

            s = reduce_in_place(h, trace, observer)
        else:
            s = reduce_in_place(h, trace)
        st.reductions.update(trace.rule_counts())
        events = trace.events
        if not h:
            return s, events

        if self.opt.split_components:
            comps = h.components()
            if len(comps) > 1:
                for comp in comps:
                    size, sub = self.node(h.subgraph(comp), level, depth)
                    s += size
                    events = events + sub
                return s, events

        size, sub = self.dispatch(h, level, depth)
        return s + size, events + sub

    def dispatch(self, h: Graph, level: Level, depth: int) -> tuple[int, list[TraceEvent]]:
        d = h.max_degree()
        if level == GENERAL:
            if d >= 9:
                return self.vertex_branch(h, _max_degree_vertex(h), level, depth)
            return self.node(h, 8, depth)
        if level == FALLBACK:
            return self.vertex_branch(h, _max_degree_vertex(h), level, depth)
        theta = level
        if d > theta:
            return self.vertex_branch(h, _max_degree_vertex(h), level, depth)
        if d == theta:
            short = find_short_edges(h, theta)
            if short:
                v, w = select_optimal_short_edge(short, h)
                return self.edge_branch(h, v, w, level, depth)
            self.stats.selector_calls += 1
            return self.vertex_branch(h, select_optimal_vertex(h, theta), level, depth)
        return self.node(h, theta - 1 if theta > 6 else FALLBACK, depth)

    def _check_children(self, h: Graph, level: Level, kind: str, *children: Graph) -> None:
        if not self.opt.check_measure:
            return
        mu = self._mu(level)
        before = mu(h)
        for child in children:
            self.stats.measure_checks += 1
            after = mu(child)
            if not after < before - 1e-12:
                self._violation(f"{kind} child did not lower the measure {before:.5f} -> {after:.5f} at level {level}")

    def vertex_branch(self, h: Graph, v: int, level: Level, depth: int) -> tuple[int, list[TraceEvent]]:
        self.stats.branch_nodes += 1
        self.stats.vertex_branches += 1
        plan = plan_vertex_branch(h, v)
        excl = h.copy()
        excl.remove_vertices((v,))
        incl = h.copy()
        incl.remove_vertices(h.closed_neighborhood(plan.S))
        self._check_children(h, level, "vertex", excl, incl)
        a, ev_a = self.node(excl, level, depth + 1)
        b, ev_b = self.node(incl, level, depth + 1)
        b += len(plan.S)
        if a >= b:
            return a, [VertexBranchExclude(v)] + ev_a
        return b, [VertexBranchInclude(plan.S)] + ev_b

    def edge_branch(self, h: Graph, v: int, w: int, level: Level, depth: int) -> tuple[int, list[TraceEvent]]:
        self.stats.branch_nodes += 1
        self.stats.edge_branches += 1
        plan = plan_edge_branch(h, v, w)
        deleted = h.copy()
        deleted.remove_vertices((v, w))
        dagger = build_dagger(h, plan)
        self._check_children(h, level, "edge", deleted, dagger)
        a, ev_a = self.node(deleted, level, depth + 1)
        b, ev_b = self.node(dagger, level, depth + 1)
        b += 1
        if a >= b:
            return a, [EdgeBranchLeft(v, w)] + ev_a
        return b, [EdgeBranchRight(v, w, plan.common, plan.left, plan.right)] + ev_b


def _max_degree_vertex(g: Graph) -> int:
    best, best_d = None, -1
    for v in sorted(g.adj):
        d = len(g.adj[v])
        if d > best_d:
            best, best_d = v, d
    return best


def _finish(g: Graph, size: int, events: list[TraceEvent], stats: SearchStats) -> Solution:
    trace = SolveTrace(events)
    witness = reconstruct_certificate(trace, ())
    if len(witness) != size or not g.is_independent(witness) or not witness <= set(g.adj):
        raise RuntimeError(f"certificate check failed: size {size}, witness {sorted(witness)}")
    return Solution(size, frozenset(witness), stats, trace)


def solve(g: Graph, options: SolverOptions | None = None) -> Solution:
    """Maximum independent set of ``g`` with a checked witness."""
    search = _Search(options or SolverOptions())
    size, events = search.node(g, GENERAL, 0)
    return _finish(g, size, events, search.stats)


def _run_level(g: Graph, level: Level, trace: SolveTrace | None, options: SolverOptions | None) -> int:
    search = _Search(options or SolverOptions())
    size, events = search.node(g, level, 0)
    if trace is not None:
        trace.events.extend(events)
    return size


def mis_theta(g: Graph, theta: int, trace: SolveTrace | None = None, options: SolverOptions | None = None) -> int:
    """alpha(g) through the degree-``theta`` algorithm; winning events go to ``trace``."""
    if theta not in (6, 7, 8):
        raise ValueError("theta must be 6, 7 or 8")
    return _run_level(g, theta, trace, options)


def fallback_low_degree(g: Graph, trace: SolveTrace | None = None, options: SolverOptions | None = None) -> int:
    """alpha(g) by reduce plus branching on a maximum-degree vertex."""
    return _run_level(g, FALLBACK, trace, options)


# ---------------------------------------------------------------------------
# oracle


def brute_force_mis(g: Graph) -> tuple[int, frozenset[int]]:
    """Exhaustive search on bitmasks; independent of the reduction machinery."""
    ids = g.vertices()
    n = len(ids)
    if n > BRUTE_FORCE_LIMIT:
        raise GraphError(f"oracle limited to {BRUTE_FORCE_LIMIT} vertices, got {n}")
    pos = {v: i for i, v in enumerate(ids)}
    nbr = [0] * n
    for v in ids:
        for u in g.adj[v]:
            nbr[pos[v]] |= 1 << pos[u]

    def best(mask: int) -> int:
        if not mask:
            return 0
        pick, pick_deg = -1, -1
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            deg = bin(nbr[i] & mask).count("1")
            if deg <= 1:
                # a vertex of degree <= 1 is always safe to take
                return best(mask & ~(nbr[i] | low)) | low
            if deg > pick_deg:
                pick, pick_deg = i, deg
        bit = 1 << pick
        take = best(mask & ~(nbr[pick] | bit)) | bit
        skip = best(mask & ~bit)
        return take if bin(take).count("1") >= bin(skip).count("1") else skip

    chosen = best((1 << n) - 1)
    witness = frozenset(ids[i] for i in range(n) if chosen >> i & 1)
    return len(witness), witness
