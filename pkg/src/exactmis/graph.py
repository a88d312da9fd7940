"""Dynamic simple undirected graph with stable vertex ids.

Vertex ids are never reused inside one solve: contraction draws fresh ids
from a counter that is shared between a graph and all of its copies, so a
trace recorded along any branch refers to unambiguous vertices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised on misuse of the graph API (unknown vertex, bad argument)."""


class _IdCounter:
    __slots__ = ("next_id",)

    def __init__(self, start: int) -> None:
        self.next_id = start

    def take(self) -> int:
        value = self.next_id
        self.next_id += 1
        return value


class Graph:
    """Mutable simple graph stored as a dict of neighbor sets."""

    __slots__ = ("adj", "_ids")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()) -> None:
        self.adj: dict[int, set[int]] = {}
        self._ids = _IdCounter(0)
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(range(n), edges)

    def add_vertex(self, v: int) -> None:
        self.adj.setdefault(v, set())
        if v >= self._ids.next_id:
            self._ids.next_id = v + 1

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)
        top = max(u, v)
        if top >= self._ids.next_id:
            self._ids.next_id = top + 1

    def copy(self) -> Graph:
        g = Graph.__new__(Graph)
        g.adj = {v: set(nb) for v, nb in self.adj.items()}
        g._ids = self._ids
        return g

    def fresh_id(self) -> int:
        return self._ids.take()

    # queries ----------------------------------------------------------

    def __len__(self) -> int:
        return len(self.adj)

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def __iter__(self) -> Iterator[int]:
        return iter(self.adj)

    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self.adj.items() for v in nb if u < v)

    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def neighbors(self, v: int) -> set[int]:
        try:
            return self.adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj.values()), default=0)

    def min_degree(self) -> int:
        return min((len(nb) for nb in self.adj.values()), default=0)

    def closed_neighborhood(self, xs: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for x in xs:
            out.add(x)
            out |= self.neighbors(x)
        return out

    def open_neighborhood(self, xs: Iterable[int]) -> set[int]:
        xs = set(xs)
        return self.closed_neighborhood(xs) - xs

    def is_independent(self, xs: Iterable[int]) -> bool:
        xs = set(xs)
        return all(not (self.neighbors(x) & xs) for x in xs)

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for start in sorted(self.adj):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(comp)
        return comps

    def subgraph(self, xs: Iterable[int]) -> Graph:
        xs = set(xs)
        g = Graph.__new__(Graph)
        g.adj = {v: self.adj[v] & xs for v in xs}
        g._ids = self._ids
        return g

    def audit(self) -> None:
        """Check symmetry and simplicity; raise AssertionError on corruption."""
        for v, nb in self.adj.items():
            assert v not in nb, f"self-loop at {v}"
            for u in nb:
                assert u in self.adj, f"dangling neighbor {u} of {v}"
                assert v in self.adj[u], f"asymmetric edge {v}-{u}"

    # mutation ---------------------------------------------------------

    def remove_vertices(self, xs: Iterable[int]) -> None:
        xs = set(xs)
        for x in xs:
            if x not in self.adj:
                raise GraphError(f"unknown vertex {x}")
        for x in xs:
            for y in self.adj.pop(x):
                if y not in xs:
                    self.adj[y].discard(x)

    def contract(self, xs: Iterable[int]) -> int:
        """Contract ``xs`` into one fresh vertex adjacent to N(xs); return its id."""
        xs = set(xs)
        if not xs:
            raise GraphError("cannot contract an empty set")
        outside = self.open_neighborhood(xs)
        self.remove_vertices(xs)
        c = self.fresh_id()
        self.adj[c] = set(outside)
        for y in outside:
            self.adj[y].add(c)
        return c

    def __repr__(self) -> str:
        return f"Graph(n={len(self)}, m={self.num_edges()})"


def delete_vertices(g: Graph, xs: Iterable[int]) -> Graph:
    """Return ``g - xs`` as a new graph."""
    h = g.copy()
    h.remove_vertices(xs)
    return h


def contract_set(g: Graph, xs: Iterable[int]) -> tuple[Graph, int]:
    """Return ``g / xs`` and the id of the contracted vertex."""
    h = g.copy()
    c = h.contract(xs)
    return h, c


def second_neighborhood(g: Graph, v: int) -> set[int]:
    nv = g.neighbors(v)
    out: set[int] = set()
    for u in nv:
        out |= g.adj[u]
    out -= nv
    out.discard(v)
    return out


@dataclass(frozen=True)
class NeighborhoodStats:
    degree: int
    e_v: int
    f_v: int
    n2_size: int
    q_v: int
    k: dict[int, int]

    def k_at(self, i: int) -> int:
        return self.k.get(i, 0)

    @property
    def outer_excess(self) -> int:
        """``f_v + (f_v - |N2(v)|)``, the degree-change lower-bound term."""
        return 2 * self.f_v - self.n2_size


def neighborhood_stats(g: Graph, v: int, max_degree: int | None = None) -> NeighborhoodStats:
    nv = g.neighbors(v)
    d = g.max_degree() if max_degree is None else max_degree
    e_v = 0
    f_v = 0
    k: dict[int, int] = {}
    n2: set[int] = set()
    for u in nv:
        nu = g.adj[u]
        inner = len(nu & nv)
        e_v += inner
        outer = nu - nv
        outer.discard(v)
        f_v += len(outer)
        n2 |= outer
        du = len(nu)
        k[du] = k.get(du, 0) + 1
    q_v = sum(1 for z in n2 if len(g.adj[z]) < d)
    return NeighborhoodStats(len(nv), e_v // 2, f_v, len(n2), q_v, k)


def iter_pairs(xs: Iterable[int]) -> Iterator[tuple[int, int]]:
    return itertools.combinations(sorted(xs), 2)
