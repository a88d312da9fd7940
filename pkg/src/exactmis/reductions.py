"""Polynomial-time reductions and the trace used to rebuild certificates.

``reduce`` repeatedly applies, in this priority order:

1. removal of components that are line graphs of 4-regular, (4,5)-bipartite
   or 5-regular graphs (solved exactly by matching);
2. taking isolated vertices and removing unconfined vertices;
3. folding complete k-independent sets for k = 1, 2.

Every change is logged as a ``TraceEvent`` carrying original vertex ids, so a
maximum independent set of the reduced graph can be lifted back.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Union

from .graph import Graph, GraphError
from .matching import LineClass, find_line_components, line_component_mis


@dataclass(frozen=True)
class RemovedUnconfined:
    v: int


@dataclass(frozen=True)
class RemovedIsolated:
    v: int


@dataclass(frozen=True)
class FoldedIndependent:
    A: frozenset[int]
    NA: frozenset[int]
    contracted: int


@dataclass(frozen=True)
class FoldedClique:
    A: frozenset[int]
    NA: frozenset[int]


@dataclass(frozen=True)
class LineComponent:
    vertices: frozenset[int]
    chosen: frozenset[int]
    cls: LineClass


@dataclass(frozen=True)
class EdgeBranchLeft:
    v: int
    w: int


@dataclass(frozen=True)
class EdgeBranchRight:
    v: int
    w: int
    common: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]


@dataclass(frozen=True)
class VertexBranchExclude:
    v: int


@dataclass(frozen=True)
class VertexBranchInclude:
    S: frozenset[int]


TraceEvent = Union[
    RemovedUnconfined,
    RemovedIsolated,
    FoldedIndependent,
    FoldedClique,
    LineComponent,
    EdgeBranchLeft,
    EdgeBranchRight,
    VertexBranchExclude,
    VertexBranchInclude,
]


@dataclass
class SolveTrace:
    events: list[TraceEvent] = field(default_factory=list)

    def append(self, event: TraceEvent) -> None:
        self.events.append(event)

    def extend(self, other: SolveTrace) -> None:
        self.events.extend(other.events)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def rule_counts(self) -> Counter:
        return Counter(type(e).__name__ for e in self.events)


class TraceError(RuntimeError):
    """The trace cannot be inverted against the given solution."""


def reconstruct_certificate(trace: SolveTrace | Iterable[TraceEvent], leaf_solution: Iterable[int]) -> set[int]:
    """Undo ``trace`` last-to-first, lifting ``leaf_solution`` to the original graph."""
    sol = set(leaf_solution)
    events = list(trace.events if isinstance(trace, SolveTrace) else trace)
    for ev in reversed(events):
        if isinstance(ev, (RemovedUnconfined, VertexBranchExclude, EdgeBranchLeft)):
            continue
        if isinstance(ev, RemovedIsolated):
            sol.add(ev.v)
        elif isinstance(ev, FoldedIndependent):
            if ev.contracted in sol:
                sol.discard(ev.contracted)
                sol |= ev.NA
            else:
                sol |= ev.A
        elif isinstance(ev, FoldedClique):
            sol |= ev.A
        elif isinstance(ev, LineComponent):
            sol |= ev.chosen
        elif isinstance(ev, VertexBranchInclude):
            sol |= ev.S
        elif isinstance(ev, EdgeBranchRight):
            hits_left = bool(sol & ev.left)
            hits_right = bool(sol & ev.right)
            if hits_left and hits_right:
                raise TraceError(f"solution meets both sides of edge branch {ev.v}-{ev.w}")
            sol.add(ev.w if hits_left else ev.v)
        else:
            raise TraceError(f"unknown trace event {ev!r}")
    return sol


# ---------------------------------------------------------------------------
# rules


def extending_set(g: Graph, v: int) -> tuple[set[int], set[int]]:
    """Extending children N*(v) and S_v = {v} plus the extending grandchildren."""
    nv = g.neighbors(v)
    children: set[int] = set()
    s_v = {v}
    for u in nv:
        outer = g.adj[u] - nv
        outer.discard(v)
        if len(outer) == 1:
            children.add(u)
            s_v |= outer
    return children, s_v


def is_unconfined(g: Graph, v: int) -> bool:
    nv = g.neighbors(v)
    grandchildren: set[int] = set()
    for u in nv:
        outer = g.adj[u] - nv
        outer.discard(v)
        if not outer:
            return True
        if len(outer) == 1:
            grandchildren |= outer
    for s in grandchildren:
        if g.adj[s] & grandchildren:
            return True
    return False


def find_complete_k_independent(g: Graph, k: int) -> set[int] | None:
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2")
    if k == 1:
        for v in sorted(g.adj):
            if len(g.adj[v]) == 2:
                return {v}
        return None
    groups: dict[frozenset[int], int] = {}
    for v in sorted(g.adj):
        nb = g.adj[v]
        if len(nb) != 3:
            continue
        key = frozenset(nb)
        if key in groups:
            return {groups[key], v}
        groups[key] = v
    return None


def _check_complete(g: Graph, A: set[int]) -> frozenset[int]:
    k = len(A)
    if k not in (1, 2):
        raise GraphError("complete k-independent set must have k in {1, 2}")
    neighborhoods = {frozenset(g.neighbors(a)) for a in A}
    if len(neighborhoods) != 1:
        raise GraphError(f"{sorted(A)} do not share a neighborhood")
    na = neighborhoods.pop()
    if len(na) != k + 1:
        raise GraphError(f"{sorted(A)} are not of degree {k + 1}")
    return na


def _fold_in_place(g: Graph, A: set[int], trace: SolveTrace) -> int:
    na = _check_complete(g, A)
    closed = set(A) | na
    if g.is_independent(na):
        c = g.contract(closed)
        trace.append(FoldedIndependent(frozenset(A), na, c))
    else:
        g.remove_vertices(closed)
        trace.append(FoldedClique(frozenset(A), na))
    return len(A)


def fold(g: Graph, A: Iterable[int], trace: SolveTrace) -> tuple[Graph, int]:
    h = g.copy()
    gained = _fold_in_place(h, set(A), trace)
    return h, gained


# ---------------------------------------------------------------------------
# the reduction loop

StepObserver = Callable[[TraceEvent, Graph, int], None]


def _line_step(g: Graph, trace: SolveTrace) -> int | None:
    found = find_line_components(g)
    if not found:
        return None
    comp, cls = found[0]
    chosen = line_component_mis(g, comp, cls)
    g.remove_vertices(comp)
    trace.append(LineComponent(frozenset(comp), frozenset(chosen), cls))
    return len(chosen)


def _unconfined_step(g: Graph, trace: SolveTrace) -> int | None:
    for v in sorted(g.adj):
        nb = g.adj[v]
        if not nb:
            g.remove_vertices((v,))
            trace.append(RemovedIsolated(v))
            return 1
        if is_unconfined(g, v):
            g.remove_vertices((v,))
            trace.append(RemovedUnconfined(v))
            return 0
    return None


def _fold_step(g: Graph, trace: SolveTrace) -> int | None:
    for k in (1, 2):
        A = find_complete_k_independent(g, k)
        if A is not None:
            return _fold_in_place(g, A, trace)
    return None


_STEPS = (_line_step, _unconfined_step, _fold_step)


def reduce_step(g: Graph, trace: SolveTrace) -> int | None:
    """Apply one reduction in place; return the solution size banked, or None."""
    for step in _STEPS:
        gained = step(g, trace)
        if gained is not None:
            return gained
    return None


def reduce_in_place(g: Graph, trace: SolveTrace, observer: StepObserver | None = None) -> int:
    s = 0
    while True:
        gained = reduce_step(g, trace)
        if gained is None:
            return s
        s += gained
        if observer is not None:
            observer(trace.events[-1], g, gained)


def reduce(g: Graph, trace: SolveTrace | None = None, observer: StepObserver | None = None) -> tuple[Graph, int]:
    """Return the reduced graph and the number of solution vertices banked."""
    h = g.copy()
    s = reduce_in_place(h, SolveTrace() if trace is None else trace, observer)
    return h, s


def is_reduced(g: Graph) -> bool:
    if find_line_components(g):
        return False
    if any(not g.adj[v] or is_unconfined(g, v) for v in g.adj):
        return False
    return find_complete_k_independent(g, 1) is None and find_complete_k_independent(g, 2) is None
