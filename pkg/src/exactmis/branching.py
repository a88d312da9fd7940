"""Vertex and edge branching plus the selection rules for max degree 6, 7, 8."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .graph import Graph, GraphError, NeighborhoodStats, neighborhood_stats
from .reductions import extending_set


class SelectionError(RuntimeError):
    """No optimal vertex exists where one is guaranteed; indicates an upstream bug."""


@dataclass(frozen=True)
class VertexBranch:
    v: int
    S: frozenset[int]


@dataclass(frozen=True)
class EdgeBranch:
    v: int
    w: int
    common: frozenset[int]
    left: frozenset[int]
    right: frozenset[int]


BranchPlan = Union[VertexBranch, EdgeBranch]


def plan_vertex_branch(g: Graph, v: int) -> VertexBranch:
    _, s_v = extending_set(g, v)
    return VertexBranch(v, frozenset(s_v))


def plan_edge_branch(g: Graph, v: int, w: int) -> EdgeBranch:
    if not g.has_edge(v, w):
        raise GraphError(f"{v} and {w} are not adjacent")
    nv, nw = g.adj[v], g.adj[w]
    common = nv & nw
    left = nv - nw - {w}
    right = nw - nv - {v}
    return EdgeBranch(v, w, frozenset(common), frozenset(left), frozenset(right))


def vertex_branch_subproblems(g: Graph, v: int) -> tuple[Graph, Graph, int]:
    """``(g - v, g - N[S_v], |S_v|)``."""
    plan = plan_vertex_branch(g, v)
    excl = g.copy()
    excl.remove_vertices((v,))
    incl = g.copy()
    incl.remove_vertices(g.closed_neighborhood(plan.S))
    return excl, incl, len(plan.S)


def build_dagger(g: Graph, plan: EdgeBranch) -> Graph:
    h = g.copy()
    h.remove_vertices({plan.v, plan.w} | plan.common)
    for a in plan.left:
        for b in plan.right:
            if not h.has_edge(a, b):
                h.add_edge(a, b)
    return h


def edge_branch_subproblems(g: Graph, v: int, w: int) -> tuple[Graph, Graph]:
    """``(g - {v, w}, G-dagger)``; alpha(g) = max(alpha(first), alpha(second) + 1)."""
    plan = plan_edge_branch(g, v, w)
    deleted = g.copy()
    deleted.remove_vertices((v, w))
    return deleted, build_dagger(g, plan)


# ---------------------------------------------------------------------------
# short edges


def find_short_edges(g: Graph, theta: int) -> list[tuple[int, int]]:
    """Ordered pairs ``(v, w)`` meeting the short-edge definition for ``theta``."""
    if theta not in (6, 7, 8):
        raise ValueError("theta must be 6, 7 or 8")
    out = []
    for v in sorted(g.adj):
        nv = g.adj[v]
        if len(nv) != theta:
            continue
        for w in sorted(nv):
            dw = len(g.adj[w])
            if theta == 6:
                ok = dw in (5, 6) and len(nv & g.adj[w]) >= 3
            else:
                ok = dw == theta and len(nv & g.adj[w]) >= 4
            if ok:
                out.append((v, w))
    return out


def short_edge_score(g: Graph, edge: tuple[int, int]) -> int:
    v, w = edge
    return len(g.adj[v] & g.adj[w]) - len(g.adj[w])


def select_optimal_short_edge(edges: Iterable[tuple[int, int]], g: Graph) -> tuple[int, int]:
    edges = list(edges)
    if not edges:
        raise ValueError("no short edges to choose from")
    return min(edges, key=lambda e: (-short_edge_score(g, e), e))


# ---------------------------------------------------------------------------
# optimal vertices


def _clause_theta6(st: NeighborhoodStats, has_children: bool) -> int | None:
    k3, k4, k5, k6 = (st.k_at(i) for i in (3, 4, 5, 6))
    score = st.outer_excess + st.q_v
    if k3 >= 1 or k6 <= 3:
        return 1
    if k6 == 4 and k5 <= 1:
        return 2
    if k6 == 4 and k5 == 2 and score >= 17:
        return 3
    if k6 == 5 and k4 == 1 and score >= 18:
        return 4
    if k6 == 5 and k5 == 1 and score >= 19:
        return 5
    if k6 == 6 and score >= 22:
        return 6
    return None


def _clause_theta7(st: NeighborhoodStats, has_children: bool) -> int | None:
    k3, k4, k7 = st.k_at(3), st.k_at(4), st.k_at(7)
    if has_children:
        return 1
    if k7 <= 5:
        return 2
    if k7 == 6 and st.outer_excess >= 22 - 2 * k3 - k4:
        return 3
    if k7 == 7 and st.outer_excess >= 26:
        return 4
    return None


def _clause_theta8(st: NeighborhoodStats, has_children: bool) -> int | None:
    k8 = st.k_at(8)
    if k8 <= 7:
        return 1
    if k8 == 8 and st.outer_excess >= 36:
        return 2
    return None


_CLAUSES = {6: _clause_theta6, 7: _clause_theta7, 8: _clause_theta8}


def optimal_clause(g: Graph, v: int, theta: int, max_degree: int | None = None) -> int | None:
    """Index of the first satisfied optimality clause for ``v``, or None."""
    st = neighborhood_stats(g, v, max_degree)
    has_children = False
    if theta == 7:
        children, _ = extending_set(g, v)
        has_children = bool(children)
    return _CLAUSES[theta](st, has_children)


def select_optimal_vertex(g: Graph, theta: int) -> int:
    """Degree-``theta`` vertex with the earliest satisfied clause, smallest id on ties."""
    if theta not in _CLAUSES:
        raise ValueError("theta must be 6, 7 or 8")
    d = g.max_degree()
    best: tuple[int, int] | None = None
    for v in sorted(g.adj):
        if len(g.adj[v]) != theta:
            continue
        clause = optimal_clause(g, v, theta, d)
        if clause is not None and (best is None or clause < best[0]):
            best = (clause, v)
            if clause == 1:
                break
    if best is None:
        raise SelectionError(f"no optimal degree-{theta} vertex in {g!r}")
    return best[1]
