"""DIMACS edge files and adjacency lists.

DIMACS ids are 1-based on disk and 0-based in memory.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph


class ParseError(ValueError):
    def __init__(self, line: int, msg: str) -> None:
        super().__init__(f"line {line}: {msg}")
        self.line = line


def parse_dimacs(text: str) -> Graph:
    g: Graph | None = None
    n = m = 0
    count = 0
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] == "c":
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if g is not None:
                raise ParseError(lineno, "second problem line")
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(lineno, f"malformed header {line!r}")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(lineno, f"malformed header {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative size in header")
            g = Graph(range(n))
        elif tag in ("e", "a"):
            if g is None:
                raise ParseError(lineno, "edge before problem line")
            if len(parts) != 3:
                raise ParseError(lineno, f"malformed edge {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, f"malformed edge {line!r}") from None
            for x in (u, v):
                if not 1 <= x <= n:
                    raise ParseError(lineno, f"vertex {x} outside 1..{n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            count += 1
            e = (min(u, v) - 1, max(u, v) - 1)
            if e not in seen:
                seen.add(e)
                g.add_edge(*e)
        else:
            raise ParseError(lineno, f"unknown line type {tag!r}")
    if g is None:
        raise ParseError(0, "missing problem line")
    if count != m:
        raise ParseError(0, f"header declares {m} edges, found {count}")
    return g


def parse_adjacency(text: str) -> Graph:
    """One ``u: v w x`` line per vertex, 0-based ids; edges may be listed once."""
    g = Graph()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(lineno, f"expected 'u: neighbors', got {line!r}")
        head, tail = line.split(":", 1)
        try:
            u = int(head)
            nbs = [int(x) for x in tail.split()]
        except ValueError:
            raise ParseError(lineno, f"non-integer id in {line!r}") from None
        if u < 0 or any(x < 0 for x in nbs):
            raise ParseError(lineno, "negative vertex id")
        g.add_vertex(u)
        for v in nbs:
            if v == u:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            g.add_edge(u, v)
    return g


def parse_instance(data: str | bytes) -> Graph:
    text = data.decode() if isinstance(data, bytes) else data
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p "):
            return parse_dimacs(text)
        break
    return parse_adjacency(text)


def read_instance(path: str | Path) -> Graph:
    return parse_instance(Path(path).read_bytes())


def canonical(g: Graph) -> Graph:
    """Relabel vertices to 0..n-1 in sorted id order."""
    ids = g.vertices()
    pos = {v: i for i, v in enumerate(ids)}
    return Graph.from_edges(len(ids), [(pos[u], pos[v]) for u, v in g.edges()])


def to_dimacs(g: Graph, comment: str | None = None) -> str:
    h = canonical(g)
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p edge {len(h)} {h.num_edges()}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in h.edges())
    return "\n".join(lines) + "\n"


def to_adjacency(g: Graph) -> str:
    return "".join(f"{v}: {' '.join(map(str, sorted(g.adj[v])))}\n" for v in g.vertices())


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False)
