import pytest

from exactmis import generators
from exactmis.weights import (
    REFERENCE_SIGMA,
    REFERENCE_WEIGHTS,
    WeightError,
    WeightVector,
    measure,
)


def test_measure_examples(petersen):
    w6 = REFERENCE_WEIGHTS[6]
    assert measure(generators.cycle(6), w6) == 0
    assert measure(petersen, w6) == pytest.approx(4.9969, abs=1e-9)
    assert measure(generators.complete(7), w6) == pytest.approx(7.0)


def test_extension_above_theta():
    w = REFERENCE_WEIGHTS[6]
    d6 = 1 - 0.92401
    assert w(7) == pytest.approx(1 + d6)
    assert w(9) == pytest.approx(1 + 3 * d6)
    assert w.delta(3) == pytest.approx(0.49969)


@pytest.mark.parametrize("theta", [6, 7, 8])
def test_reference_vectors_feasible(theta):
    sigma = REFERENCE_SIGMA if theta == 6 else None
    assert REFERENCE_WEIGHTS[theta].violations(sigma) == []


def test_uniform_weights_violate_top_delta_bound():
    w = WeightVector.from_values(6, (0.25, 0.5, 0.75))
    msgs = w.violations()
    assert any("exceeds w_3" in m for m in msgs)


def test_merge_constraint_detected():
    # w_3 + w_3 < w_4 breaks the merge inequality
    w = WeightVector.from_values(6, (0.1, 0.9, 0.95))
    assert any("w_3 + w_3 < w_4" in m for m in w.violations())


def test_sigma_constraint():
    w = REFERENCE_WEIGHTS[6]
    assert w.violations(sigma=0.2)
    assert w.violations(sigma=-0.01)


def test_bad_vectors_rejected():
    with pytest.raises(WeightError):
        WeightVector.from_values(6, (0.5, 0.7))
    with pytest.raises(WeightError):
        WeightVector(6, (0, 0, 0, 0.5, 0.7, 0.9, 0.95))
    with pytest.raises(WeightError):
        WeightVector(6, (0, 0.1, 0, 0.5, 0.7, 0.9, 1.0))


def test_measure_bounded_by_n_up_to_theta():
    g = generators.gnp(20, 0.2, 1)
    if g.max_degree() <= 6:
        assert measure(g, REFERENCE_WEIGHTS[6]) <= len(g)
