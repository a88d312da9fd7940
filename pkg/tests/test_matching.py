import itertools

import networkx as nx
import pytest

from exactmis import generators
from exactmis.graph import Graph
from exactmis.matching import (
    LineClass,
    detect_line_class,
    find_line_components,
    line_component_mis,
    maximum_matching,
    reconstruct_root_graph,
)
from exactmis.solver import brute_force_mis


def is_matching(g: Graph, m) -> bool:
    ends = [x for e in m for x in e]
    return len(ends) == len(set(ends)) and all(g.has_edge(u, v) for u, v in m)


def isomorphic(a: Graph, b: Graph) -> bool:
    def to_nx(g):
        h = nx.Graph()
        h.add_nodes_from(g.adj)
        h.add_edges_from(g.edges())
        return h

    return nx.is_isomorphic(to_nx(a), to_nx(b))


def all_of(g):
    return set(g.vertices())


def test_detect_line_of_k5():
    g = generators.line_of_complete(5)
    assert detect_line_class(g, all_of(g)) is LineClass.FOUR_REGULAR


def test_detect_line_of_k45():
    g = generators.line_graph(generators.complete_bipartite(4, 5))
    assert detect_line_class(g, all_of(g)) is LineClass.FOUR_FIVE_BIPARTITE


def test_detect_line_of_k6():
    g = generators.line_of_complete(6)
    assert detect_line_class(g, all_of(g)) is LineClass.FIVE_REGULAR


def test_petersen_is_not_special(petersen):
    assert detect_line_class(petersen, all_of(petersen)) is None


def test_regular_non_line_graph_rejected():
    g = generators.random_regular(14, 6, seed=3)
    assert detect_line_class(g, all_of(g)) is None


@pytest.mark.parametrize(
    "root",
    [generators.complete(5), generators.complete_bipartite(4, 5), generators.complete(6)],
    ids=["K5", "K4,5", "K6"],
)
def test_root_reconstruction(root):
    g = generators.line_graph(root)
    cls = detect_line_class(g, all_of(g))
    h, edge_map = reconstruct_root_graph(g, all_of(g), cls)
    assert h.num_edges() == len(g)
    assert set(edge_map) == all_of(g)
    assert isomorphic(h, root)


def test_matching_small_cases(petersen):
    assert len(maximum_matching(generators.cycle(4))) == 2
    assert len(maximum_matching(generators.path(5))) == 2
    m = maximum_matching(petersen)
    assert len(m) == 5 and is_matching(petersen, m)


def brute_matching(g: Graph) -> int:
    edges = g.edges()
    for r in range(len(g) // 2, 0, -1):
        for combo in itertools.combinations(edges, r):
            if is_matching(g, combo):
                return r
    return 0


def test_petersen_matching_by_enumeration(petersen):
    assert brute_matching(petersen) == 5


@pytest.mark.parametrize("seed", range(40))
def test_matching_against_networkx(seed):
    g = generators.gnp(8 + seed % 14, 0.25, seed)
    m = maximum_matching(g)
    assert is_matching(g, m)
    h = nx.Graph()
    h.add_nodes_from(g.adj)
    h.add_edges_from(g.edges())
    assert len(m) == len(nx.max_weight_matching(h, maxcardinality=True))


def _roots():
    for seed in range(4):
        yield "4-regular", generators.random_regular(10, 4, seed)
        yield "5-regular", generators.random_regular(10, 5, seed)
        yield "(4,5)-bipartite", generators.random_bipartite_regular(5, 4, 4, seed)


@pytest.mark.parametrize("name,root", list(_roots()))
def test_line_component_alpha_matches_oracle(name, root):
    g = generators.line_graph(root)
    found = find_line_components(g)
    assert len(found) == 1
    comp, cls = found[0]
    chosen = line_component_mis(g, comp, cls)
    assert g.is_independent(chosen)
    assert len(chosen) == brute_force_mis(g)[0]


def test_two_components_found_separately():
    a = generators.line_of_complete(5)
    b = generators.line_of_complete(5)
    g = Graph(range(20), a.edges() + [(u + 10, v + 10) for u, v in b.edges()])
    assert len(find_line_components(g)) == 2
