import pytest

from exactmis import generators
from exactmis.graph import Graph, GraphError
from exactmis.matching import find_line_components
from exactmis.reductions import (
    FoldedClique,
    FoldedIndependent,
    LineComponent,
    SolveTrace,
    extending_set,
    find_complete_k_independent,
    fold,
    is_reduced,
    is_unconfined,
    reconstruct_certificate,
    reduce,
    reduce_step,
)
from exactmis.solver import brute_force_mis

from helpers import random_graphs


def alpha(g):
    return brute_force_mis(g)[0]


def test_extending_set_c5(c5):
    assert extending_set(c5, 0) == ({1, 4}, {0, 2, 3})


def test_extending_set_k4():
    assert extending_set(generators.complete(4), 2) == (set(), {2})


def test_extending_set_star_center():
    assert extending_set(generators.star(3), 0) == (set(), {0})


def test_unconfined_k4():
    g = generators.complete(4)
    assert is_unconfined(g, 0)
    assert alpha(g) == alpha(generators.complete(3))


def test_unconfined_c5(c5):
    assert is_unconfined(c5, 0)
    assert alpha(c5) == alpha(generators.path(4)) == 2


def test_c6_vertex_is_confined():
    assert not is_unconfined(generators.cycle(6), 0)


def test_complete_one_independent_in_p3():
    assert find_complete_k_independent(generators.path(3), 1) == {1}


def test_complete_two_independent_in_k23():
    g = generators.complete_bipartite(2, 3)
    assert find_complete_k_independent(g, 2) == {0, 1}


def test_petersen_has_no_complete_sets(petersen):
    assert find_complete_k_independent(petersen, 1) is None
    assert find_complete_k_independent(petersen, 2) is None


def test_fold_p3_contracts():
    g = generators.path(3)
    trace = SolveTrace()
    h, gained = fold(g, {1}, trace)
    assert gained == 1 and len(h) == 1
    assert isinstance(trace.events[-1], FoldedIndependent)
    assert alpha(h) + gained == alpha(g) == 2


def test_fold_triangle_deletes():
    trace = SolveTrace()
    h, gained = fold(generators.complete(3), {1}, trace)
    assert len(h) == 0 and gained == 1
    assert isinstance(trace.events[-1], FoldedClique)


def test_fold_k23():
    g = generators.complete_bipartite(2, 3)
    h, gained = fold(g, {0, 1}, SolveTrace())
    assert len(h) == 1 and gained == 2
    assert alpha(g) == 3


def test_fold_rejects_non_complete_set(c5):
    with pytest.raises(GraphError):
        fold(generators.cycle(6), {0, 3}, SolveTrace())
    with pytest.raises(GraphError):
        fold(generators.complete(4), {0}, SolveTrace())


def test_reduce_c5(c5):
    h, s = reduce(c5)
    assert len(h) == 0 and s == 2


def test_reduce_petersen_is_identity(petersen):
    h, s = reduce(petersen)
    assert s == 0 and h.edges() == petersen.edges()
    assert is_reduced(petersen)


def test_reduce_line_of_k5():
    trace = SolveTrace()
    h, s = reduce(generators.line_of_complete(5), trace)
    assert len(h) == 0 and s == 2
    assert isinstance(trace.events[0], LineComponent)


def test_fold_inversion_p3():
    g = generators.path(3)
    trace = SolveTrace()
    h, _ = fold(g, {1}, trace)
    (c,) = h.vertices()
    assert reconstruct_certificate(trace, {c}) == {0, 2}
    assert reconstruct_certificate(trace, set()) == {1}


def test_c5_certificate(c5):
    trace = SolveTrace()
    reduce(c5, trace)
    cert = reconstruct_certificate(trace, set())
    assert len(cert) == 2 and c5.is_independent(cert)


@pytest.mark.parametrize("seed", range(4))
def test_single_steps_preserve_alpha(seed):
    for g in random_graphs(25, (4, 16), seed=seed):
        h = g.copy()
        base = alpha(h)
        while True:
            before_size = len(h) + h.num_edges()
            gained = reduce_step(h, SolveTrace())
            if gained is None:
                break
            after = alpha(h)
            assert base == after + gained
            assert len(h) + h.num_edges() < before_size
            base = after


@pytest.mark.parametrize("seed", range(3))
def test_reduce_certificate_and_definition_audit(seed):
    for g in random_graphs(30, (4, 18), seed=seed + 10):
        trace = SolveTrace()
        h, s = reduce(g, trace)
        a_h, leaf = brute_force_mis(h)
        assert alpha(g) == a_h + s
        cert = reconstruct_certificate(trace, leaf)
        assert g.is_independent(cert) and len(cert) == alpha(g)
        # reduced per definition, and minimum degree >= 3
        assert not any(is_unconfined(h, v) for v in h)
        assert find_complete_k_independent(h, 1) is None
        assert find_complete_k_independent(h, 2) is None
        assert not find_line_components(h)
        assert all(h.degree(v) >= 3 for v in h)


def test_isolated_vertex_taken():
    h, s = reduce(Graph(range(3)))
    assert len(h) == 0 and s == 3
