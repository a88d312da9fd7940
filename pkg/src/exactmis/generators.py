"""Deterministic graph families and seeded random instances."""

from __future__ import annotations

import itertools
import random

from .graph import Graph, GraphError


def empty(n: int) -> Graph:
    return Graph(range(n))


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_multipartite(*sizes: int) -> Graph:
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [(u, v) for a, b in itertools.combinations(parts, 2) for u in a for v in b]
    return Graph.from_edges(start, edges)


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(v, v ^ (1 << b)) for v in range(n) for b in range(d) if v < v ^ (1 << b)])


def dodecahedron() -> Graph:
    # outer 5-cycle, middle 10-cycle, inner 5-cycle
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, 5 + 2 * i) for i in range(5)]
    edges += [(5 + i, 5 + (i + 1) % 10) for i in range(10)]
    edges += [(6 + 2 * i, 15 + i) for i in range(5)]
    edges += [(15 + i, 15 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(20, edges)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in sorted order."""
    edges = g.edges()
    by_vertex: dict[int, list[int]] = {}
    for idx, (a, b) in enumerate(edges):
        by_vertex.setdefault(a, []).append(idx)
        by_vertex.setdefault(b, []).append(idx)
    out = Graph(range(len(edges)))
    for members in by_vertex.values():
        for x, y in itertools.combinations(members, 2):
            out.add_edge(x, y)
    return out


def line_of_complete(n: int) -> Graph:
    return line_graph(complete(n))


def gnp(n: int, p: float, seed: int) -> Graph:
    if not 0 <= p <= 1:
        raise GraphError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_regular(n: int, k: int, seed: int, max_tries: int = 1000) -> Graph:
    """Simple k-regular graph by configuration-model pairing.

    Stubs are paired one random pair at a time, rejecting loops and repeated
    edges; a dead end restarts the pairing from scratch.
    """
    if n * k % 2:
        raise GraphError(f"no {k}-regular graph on {n} vertices (n*k is odd)")
    if k >= n:
        raise GraphError(f"degree {k} needs more than {n} vertices")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = _pair_stubs(rng, [v for v in range(n) for _ in range(k)])
        if edges is not None:
            return Graph.from_edges(n, sorted(edges))
    raise GraphError(f"configuration model failed {max_tries} times for n={n}, k={k}")


def _pair_stubs(rng: random.Random, stubs: list[int]) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    while stubs:
        for _ in range(50):
            i, j = rng.sample(range(len(stubs)), 2)
            a, b = stubs[i], stubs[j]
            e = (min(a, b), max(a, b))
            if a != b and e not in edges:
                break
        else:
            ok = [
                (i, j)
                for i, j in itertools.combinations(range(len(stubs)), 2)
                if stubs[i] != stubs[j] and (min(stubs[i], stubs[j]), max(stubs[i], stubs[j])) not in edges
            ]
            if not ok:
                return None
            i, j = rng.choice(ok)
            a, b = stubs[i], stubs[j]
            e = (min(a, b), max(a, b))
        edges.add(e)
        for idx in sorted((i, j), reverse=True):
            stubs[idx] = stubs[-1]
            stubs.pop()
    return edges


def random_bipartite_regular(a: int, da: int, b: int, seed: int, max_tries: int = 10_000) -> Graph:
    """Simple bipartite graph, side sizes a and b, left degree da, right degree a*da/b."""
    if (a * da) % b:
        raise GraphError("a*da must be divisible by b")
    db = a * da // b
    rng = random.Random(seed)
    left = [v for v in range(a) for _ in range(da)]
    right = [a + v for v in range(b) for _ in range(db)]
    for _ in range(max_tries):
        rng.shuffle(right)
        edges = set(zip(left, right))
        if len(edges) == len(left):
            return Graph.from_edges(a + b, sorted(edges))
    raise GraphError("bipartite configuration model failed")


GEN_KINDS = ("gnp", "regular-k", "cycle", "line-of-complete", "petersen", "hypercube", "dodecahedron", "complete")
