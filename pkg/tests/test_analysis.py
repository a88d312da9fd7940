import itertools
import math
import random
import time

import pytest

from exactmis.analysis import (
    AnalysisError,
    Recurrence,
    analyze,
    branching_factor,
    catalog,
    compositions,
    corner_recurrences,
    cross_level_constraints,
    cross_level_details,
    lambda_theta,
    optimize_weights,
)
from exactmis.weights import (
    LEVEL5_WEIGHTS,
    REFERENCE_BOUNDS,
    REFERENCE_SIGMA,
    REFERENCE_WEIGHTS,
    WeightVector,
)

SLACK = 1e-4


def test_known_factors():
    assert branching_factor((1, 10)) == pytest.approx(1.19749, abs=1e-5)
    assert branching_factor((1, 1)) == 2.0
    assert branching_factor((1, 2)) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-9)


def test_factor_root_property():
    rng = random.Random(4)
    for _ in range(200):
        ds = [rng.uniform(0.05, 6) for _ in range(rng.randint(1, 5))]
        if len(ds) == 1 and ds[0] > 0:
            continue
        tau = branching_factor(ds)
        assert tau > 1
        assert abs(1 - sum(tau ** -d for d in ds)) < 1e-7


def test_factor_rejects_non_positive():
    with pytest.raises(AnalysisError):
        branching_factor((1, 0))
    with pytest.raises(AnalysisError):
        branching_factor(Recurrence("x", (-1.0, 2.0)))


def test_single_corner():
    (r,) = corner_recurrences([0.5], [1.5], 1.0, 2.0, 3)
    assert r.decreases == (2.5, 6.5)


def test_corner_length_mismatch():
    with pytest.raises(AnalysisError):
        corner_recurrences([1, 2], [1], 0, 0, 2)


def test_compositions_count():
    assert sum(1 for _ in compositions(6, 4)) == math.comb(9, 3) == 84
    assert all(sum(c) == 5 for c in compositions(5, 3))


def full_enumeration_max(a, b, c, d, p):
    best = 0.0
    for k in compositions(p, len(a)):
        x = sum(ki * ai for ki, ai in zip(k, a)) + c
        y = sum(ki * bi for ki, bi in zip(k, b)) + d
        best = max(best, branching_factor((x, y)))
    return best


def test_corner_equivalence_randomized():
    rng = random.Random(11)
    for _ in range(200):
        ell = rng.randint(1, 4)
        p = rng.randint(1, 6)
        a = [rng.uniform(0, 1.5) for _ in range(ell)]
        b = [rng.uniform(0, 1.5) for _ in range(ell)]
        c, d = rng.uniform(0.1, 2), rng.uniform(0.1, 2)
        corners = max(branching_factor(r) for r in corner_recurrences(a, b, c, d, p))
        assert abs(corners - full_enumeration_max(a, b, c, d, p)) < 1e-9


def test_lambda_examples():
    w6, w7, w8 = (REFERENCE_WEIGHTS[t] for t in (6, 7, 8))
    (lam,) = lambda_theta(6, (0, 0, 0, 6))
    assert lam.evaluate(w6) == pytest.approx(22 * w6.delta(6))
    (lam,) = lambda_theta(7, (0, 0, 0, 0, 7))
    assert lam.evaluate(w7) == pytest.approx(26 * w7.delta(7))
    (lam,) = lambda_theta(8, (0, 0, 0, 0, 0, 8))
    assert lam.evaluate(w8) == pytest.approx(36 * w8.delta(8))
    (lam,) = lambda_theta(7, (0, 0, 0, 2, 5))
    assert lam.evaluate(w7) == pytest.approx(19 * w7.delta(7))


def test_lambda_rejects_bad_vectors():
    with pytest.raises(AnalysisError):
        lambda_theta(6, (1, 1, 1, 1))
    with pytest.raises(AnalysisError):
        lambda_theta(6, (0, 0, 6))


@pytest.mark.parametrize("theta", [6, 7, 8])
def test_catalog_bounds(theta):
    sigma = REFERENCE_SIGMA if theta == 6 else 0.0
    recs = catalog(theta, REFERENCE_WEIGHTS[theta], sigma)
    factors = [branching_factor(r) for r in recs]
    assert all(1 < f < math.inf for f in factors)
    assert max(factors) <= REFERENCE_BOUNDS[theta] + SLACK


def test_catalog_labels_unique_and_families_present():
    for theta in (6, 7, 8):
        labels = [r.label for r in catalog(theta, REFERENCE_WEIGHTS[theta], REFERENCE_SIGMA if theta == 6 else 0)]
        assert len(labels) == len(set(labels))
        for prefix in ("high-degree", "edge", "optimal-vertex"):
            assert any(lab.startswith(prefix) for lab in labels)
    six = [r.label for r in catalog(6, REFERENCE_WEIGHTS[6], REFERENCE_SIGMA)]
    assert any("shifted" in lab for lab in six)


def test_sigma_shift_matters_for_theta6():
    with_shift = analyze(6, sigma=REFERENCE_SIGMA).max_factor
    without = analyze(6, sigma=0.0).max_factor
    assert without > with_shift


def test_cross_level_examples():
    assert all(cross_level_constraints(6, REFERENCE_WEIGHTS[6]))
    assert all(cross_level_constraints(7, REFERENCE_WEIGHTS[7]))
    assert all(cross_level_constraints(8, REFERENCE_WEIGHTS[8]))
    d6 = cross_level_details(6, REFERENCE_WEIGHTS[6], REFERENCE_BOUNDS[6])
    assert d6[0].value == pytest.approx(1.17366 ** (0.50907 / 0.49969))
    d7 = cross_level_details(7, REFERENCE_WEIGHTS[7], REFERENCE_BOUNDS[7])
    assert d7[-1].value == pytest.approx(1.18922 ** (1 / 0.96384))


def test_cross_level_degenerate():
    w = LEVEL5_WEIGHTS
    same = WeightVector.from_values(6, (w(3), w(4), 0.95))
    res = cross_level_details(6, same, target=1.18, lower_bound_base=1.17)
    assert res[0].value == pytest.approx(1.17)
    assert cross_level_constraints(6, same, lower_bound_base=1.17, target=1.16)[0] is False


def test_analyze_report_fields():
    rep = analyze(7)
    assert rep.max_factor == max(rep.factors)
    assert rep.worst_label in [r.label for r in rep.recurrences]
    assert rep.ok and not rep.violations
    assert rep.top(3)[0][1] == rep.max_factor


def test_analyze_lists_violations():
    rep = analyze(6, WeightVector.from_values(6, (0.25, 0.5, 0.75)))
    assert rep.violations and not rep.ok


def test_catalogs_are_fast():
    t0 = time.perf_counter()
    for theta in (6, 7, 8):
        analyze(theta)
    assert time.perf_counter() - t0 < 5


def test_optimizer_from_reference_vector():
    res = optimize_weights(6, REFERENCE_WEIGHTS[6], rounds=2)
    assert res.max_factor <= res.start_factor
    assert res.max_factor <= REFERENCE_BOUNDS[6] + SLACK
    assert res.weights.is_feasible(res.sigma)


def test_optimizer_improves_a_poor_start():
    start = WeightVector.from_values(6, (0.5, 0.74, 0.93))
    assert start.is_feasible(0.0)
    res = optimize_weights(6, start, sigma_mode="zero", rounds=3)
    assert res.max_factor < res.start_factor


def test_optimizer_uniform_start():
    # all-ones weights are feasible, but no single coordinate can move from them
    res = optimize_weights(6, WeightVector.from_values(6, (1.0, 1.0, 1.0)), rounds=4)
    stuck = optimize_weights(6, WeightVector.from_values(6, (1.0, 1.0, 1.0)), rounds=4, restart=False)
    assert stuck.max_factor == stuck.start_factor
    assert res.max_factor < res.start_factor
    assert res.weights.is_feasible(res.sigma)


def test_optimizer_infeasible_start():
    with pytest.raises(AnalysisError):
        optimize_weights(6, WeightVector.from_values(6, (0.25, 0.5, 0.75)))


def test_optimizer_toy_catalog_hits_boundary():
    # one recurrence (w3, 2 w3 + 1): larger w3 is always better
    def toy(x):
        return [(x[0], 2 * x[0] + 1)]

    res = optimize_weights(6, REFERENCE_WEIGHTS[6], sigma_mode="zero", rounds=10, span=0.2, catalog_fn=toy)
    w = res.weights
    assert res.max_factor < res.start_factor
    # some constraint on w3 is now tight
    assert not WeightVector.from_values(6, (w(3) + 1e-3, w(4), w(5))).is_feasible(0.0, tol=1e-12)


def test_factor_monotone_in_decreases():
    for a, b in itertools.product((0.5, 1, 2), repeat=2):
        assert branching_factor((a + 0.1, b)) < branching_factor((a, b))
