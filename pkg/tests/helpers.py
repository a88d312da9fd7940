import random

from exactmis import generators
from exactmis.graph import Graph


def random_graphs(count: int, n_range: tuple[int, int], ps=(0.1, 0.2, 0.3, 0.5), seed: int = 0):
    """Seeded G(n, p) instances, cycling through the edge probabilities."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(*n_range)
        p = ps[i % len(ps)]
        out.append(generators.gnp(n, p, seed * 100_003 + i))
    return out


def nx_alpha(g: Graph) -> int:
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(g.adj)
    h.add_edges_from(g.edges())
    comp = nx.complement(h)
    return max((len(c) for c in nx.find_cliques(comp)), default=0)
