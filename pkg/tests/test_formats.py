import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exactmis import generators
from exactmis.formats import (
    ParseError,
    canonical,
    parse_adjacency,
    parse_dimacs,
    parse_instance,
    to_adjacency,
    to_dimacs,
)
from exactmis.graph import Graph


def test_p3():
    g = parse_instance("p edge 3 2\ne 1 2\ne 2 3\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_c5_bytes():
    text = "c pentagon\np edge 5 5\n" + "".join(f"e {i + 1} {(i + 1) % 5 + 1}\n" for i in range(5))
    g = parse_instance(text.encode())
    assert len(g) == 5 and all(g.degree(v) == 2 for v in g)


def test_self_loop_names_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_dimacs("p edge 2 1\ne 1 1\n")


@pytest.mark.parametrize(
    "text,needle",
    [
        ("p edge x 1\n", "malformed header"),
        ("p edge 3 1\ne 1 4\n", "outside"),
        ("e 1 2\n", "before problem line"),
        ("p edge 3 2\ne 1 2\n", "declares 2 edges"),
        ("p edge 3 1\nq 1 2\n", "unknown line type"),
        ("c only a comment\n", "missing problem line"),
    ],
)
def test_malformed_inputs(text, needle):
    with pytest.raises(ParseError, match=needle):
        parse_dimacs(text)


def test_duplicate_edges_collapse():
    g = parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n")
    assert g.num_edges() == 1


def test_adjacency_format():
    g = parse_instance("0: 1 2\n1: 2\n2:\n3:\n")
    assert g.edges() == [(0, 1), (0, 2), (1, 2)] and 3 in g


def test_adjacency_errors():
    with pytest.raises(ParseError, match="line 1"):
        parse_adjacency("0 1 2\n")
    with pytest.raises(ParseError, match="self-loop"):
        parse_adjacency("0: 0\n")


def test_canonical_relabels():
    g = Graph([5, 9, 12], [(5, 12)])
    assert canonical(g).edges() == [(0, 2)]


@st.composite
def graphs(draw):
    n = draw(st.integers(0, 12))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_dimacs_round_trip(g):
    h = parse_instance(to_dimacs(g, "round trip"))
    assert h.vertices() == g.vertices() and h.edges() == g.edges()


@settings(max_examples=100, deadline=None)
@given(graphs())
def test_adjacency_round_trip(g):
    h = parse_instance(to_adjacency(g))
    assert h.edges() == g.edges() and len(h) == len(g)


def test_round_trip_after_contraction():
    g = generators.petersen()
    c = g.contract({0, 1})
    h = parse_instance(to_dimacs(g))
    assert h.edges() == canonical(g).edges()
    assert c not in h
