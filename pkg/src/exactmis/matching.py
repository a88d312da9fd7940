"""Line-graph components solved through maximum matching on the root graph.

Three component classes are recognized: line graphs of 4-regular graphs
(6-regular components), of (4,5)-bipartite graphs (7-regular) and of
5-regular graphs (8-regular).  Each line vertex lies in exactly two maximal
cliques coming from the stars of its two root endpoints, so the root graph
is recovered by collecting those cliques.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from typing import Iterable

from .graph import Graph


class LineClass(enum.Enum):
    FOUR_REGULAR = (6, (4, 4))
    FOUR_FIVE_BIPARTITE = (7, (4, 5))
    FIVE_REGULAR = (8, (5, 5))

    @property
    def degree(self) -> int:
        return self.value[0]

    @property
    def clique_sizes(self) -> tuple[int, int]:
        return self.value[1]


_BY_DEGREE = {cls.degree: cls for cls in LineClass}


class RootReconstructionError(RuntimeError):
    pass


def _cliques_through(g: Graph, v: int, size: int) -> list[frozenset[int]]:
    nv = sorted(g.adj[v])
    found = []
    for combo in itertools.combinations(nv, size - 1):
        if all(b in g.adj[a] for a, b in itertools.combinations(combo, 2)):
            found.append(frozenset(combo) | {v})
    return found


def _star_pair(g: Graph, v: int, cls: LineClass) -> tuple[frozenset[int], frozenset[int]] | None:
    """The unique pair of cliques through ``v`` splitting N(v), or None."""
    s1, s2 = cls.clique_sizes
    firsts = _cliques_through(g, v, s1)
    seconds = firsts if s2 == s1 else _cliques_through(g, v, s2)
    nv = g.adj[v]
    pairs = []
    for a in firsts:
        for b in seconds:
            if a & b == {v} and (a | b) - {v} == nv:
                pair = (a, b) if s1 != s2 else tuple(sorted((a, b), key=sorted))
                if pair not in pairs:
                    pairs.append(pair)
    if len(pairs) != 1:
        return None
    return pairs[0]


def _try_reconstruct(g: Graph, component: set[int], cls: LineClass):
    stars: dict[int, tuple[frozenset[int], frozenset[int]]] = {}
    for v in component:
        if len(g.adj[v]) != cls.degree:
            return None
        pair = _star_pair(g, v, cls)
        if pair is None:
            return None
        stars[v] = pair
    cliques = sorted({c for pair in stars.values() for c in pair}, key=sorted)
    index = {c: i for i, c in enumerate(cliques)}
    root = Graph(range(len(cliques)))
    edge_map: dict[int, tuple[int, int]] = {}
    used_pairs: set[tuple[int, int]] = set()
    for v in sorted(component):
        a, b = (index[c] for c in stars[v])
        key = (min(a, b), max(a, b))
        if a == b or key in used_pairs:
            return None
        used_pairs.add(key)
        root.add_edge(a, b)
        edge_map[v] = key
    # every clique must be exactly the star of its root vertex
    for c, i in index.items():
        if {v for v, e in edge_map.items() if i in e} != set(c):
            return None
    s1, s2 = cls.clique_sizes
    for i in root:
        if root.degree(i) not in (s1, s2):
            return None
    if cls is LineClass.FOUR_FIVE_BIPARTITE:
        for a, b in root.edges():
            if {root.degree(a), root.degree(b)} != {4, 5}:
                return None
    # the line graph of the root must reproduce the component exactly
    by_root_vertex: dict[int, list[int]] = {}
    for v, (a, b) in edge_map.items():
        by_root_vertex.setdefault(a, []).append(v)
        by_root_vertex.setdefault(b, []).append(v)
    for v, (a, b) in edge_map.items():
        expected = (set(by_root_vertex[a]) | set(by_root_vertex[b])) - {v}
        if expected != g.adj[v]:
            return None
    return root, edge_map


def detect_line_class(g: Graph, component: Iterable[int]) -> LineClass | None:
    component = set(component)
    if not component:
        return None
    degrees = {len(g.adj[v]) for v in component}
    if len(degrees) != 1:
        return None
    cls = _BY_DEGREE.get(degrees.pop())
    if cls is None:
        return None
    if _try_reconstruct(g, component, cls) is None:
        return None
    return cls


def reconstruct_root_graph(
    g: Graph, component: Iterable[int], cls: LineClass
) -> tuple[Graph, dict[int, tuple[int, int]]]:
    result = _try_reconstruct(g, set(component), cls)
    if result is None:
        raise RootReconstructionError(f"component is not a line graph of class {cls.name}")
    return result


def maximum_matching(g: Graph) -> set[tuple[int, int]]:
    """Maximum-cardinality matching of a general graph (Edmonds' blossom algorithm).

    Returns edges as ``(u, v)`` tuples with ``u < v`` in the ids of ``g``.
    Runs in O(V^3).
    """
    ids = g.vertices()
    n = len(ids)
    pos = {v: i for i, v in enumerate(ids)}
    adj = [sorted(pos[u] for u in g.adj[v]) for v in ids]
    match = [-1] * n

    # greedy start
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v], match[u] = u, v
                    break

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def find_augmenting(root: int) -> tuple[int, list[int]]:
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def mark(v: int, b: int, child: int, blossom: list[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                parent[v] = child
                child = match[v]
                v = parent[match[v]]

        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        end, parent = find_augmenting(root)
        while end != -1:
            pv = parent[end]
            nxt = match[pv]
            match[end], match[pv] = pv, end
            end = nxt

    out = set()
    for i, j in enumerate(match):
        if j > i:
            a, b = ids[i], ids[j]
            out.add((min(a, b), max(a, b)))
    return out


def line_component_mis(g: Graph, component: Iterable[int], cls: LineClass) -> set[int]:
    """A maximum independent set of a recognized line-graph component."""
    root, edge_map = reconstruct_root_graph(g, component, cls)
    by_edge = {e: v for v, e in edge_map.items()}
    return {by_edge[e] for e in maximum_matching(root)}


def find_line_components(g: Graph) -> list[tuple[set[int], LineClass]]:
    out = []
    for comp in g.components():
        first = next(iter(comp))
        if len(g.adj[first]) not in _BY_DEGREE:
            continue
        cls = detect_line_class(g, comp)
        if cls is not None:
            out.append((comp, cls))
    return out
