import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wfgcri.distributions import Exponential
from wfgcri.estimators import (EmpiricalSample, cell_weight_integral, empirical_sf,
                               estimate_wfgcri_phr, estimate_wfgcri_two_sample)
from wfgcri.exceptions import DomainError
from wfgcri.measures import wfgcri_closed_form_exp

from oracles import oracle_phr, oracle_two_sample

@pytest.mark.parametrize("w, expected", [(0.5, 1.0), (1.0, 2 / 3), (3.0, 0.0), (2.5, 1 / 3)])
def test_empirical_sf_examples(w, expected):
    assert empirical_sf([1, 2, 3], w) == pytest.approx(expected, abs=1e-15)


def test_empirical_sf_ties():
    assert empirical_sf([1, 1, 2, 2], 1.0) == 0.5
    np.testing.assert_array_equal(empirical_sf([1, 1, 2, 2], [0, 1, 1.5, 2]), [1, 0.5, 0.5, 0])


def test_empirical_sample_validation():
    with pytest.raises(DomainError):
        EmpiricalSample([])
    with pytest.raises(DomainError):
        EmpiricalSample([1.0, -0.5])
    s = EmpiricalSample([3, 1, 2])
    assert list(s.values) == [1, 2, 3] and s.n == 3 and not s.values.flags.writeable


def test_phr_two_points_beta_one():
    assert estimate_wfgcri_phr([1, 2], 1.0, 1.0) == pytest.approx(1.5 * 0.5 * math.log(2),
                                                                  rel=1e-15)
    assert estimate_wfgcri_phr([1, 2], 1.0, 1.0) == pytest.approx(0.519860, abs=5e-7)


def test_phr_two_points_beta_zero():
    assert estimate_wfgcri_phr([1, 2], 1.0, 0.0) == pytest.approx(0.75, rel=1e-15)


def test_phr_alpha_factor():
    x = Exponential(1.0).sample(200, 4)
    assert estimate_wfgcri_phr(x, 3.0, 1.7) == pytest.approx(
        3.0**1.7 * estimate_wfgcri_phr(x, 1.0, 1.7), rel=1e-13)


def test_phr_needs_two_observations():
    with pytest.raises(DomainError):
        estimate_wfgcri_phr([1.0], 1.0, 1.0)
    with pytest.raises(DomainError):
        estimate_wfgcri_phr([1.0, 2.0], 0.0, 1.0)


def test_phr_large_sample_near_truth():
    x = Exponential(0.8).sample(100_000, 1)
    assert abs(estimate_wfgcri_phr(x, 0.5, 0.2) - 1.632282) < 0.02


def test_two_sample_example():
    assert estimate_wfgcri_two_sample([1, 3], [2, 4], 1.0) == pytest.approx(
        0.5 * math.log(2) * 2.5, rel=1e-15)
    assert estimate_wfgcri_two_sample([1, 3], [2, 4], 1.0) == pytest.approx(0.866434, abs=5e-7)


def test_two_sample_skip_rule():
    assert estimate_wfgcri_two_sample([1, 3], [2], 1.0) == 0.0


def test_two_sample_empty_rejected():
    with pytest.raises(DomainError):
        estimate_wfgcri_two_sample([], [1.0], 1.0)


def test_two_sample_large_sample_near_truth():
    x = Exponential(2.5).sample(100_000, 1)
    y = Exponential(3.5).sample(100_000, 2)
    assert abs(estimate_wfgcri_two_sample(x, y, 0.5) - 0.283972) < 0.01


def test_cell_weight_integral():
    assert cell_weight_integral(1.0, 2.0, 1.0) == pytest.approx(1.5)
    assert cell_weight_integral(1.0, 2.0, 0.0) == pytest.approx(1.0)
    assert cell_weight_integral(0.0, 2.0, 0.3) == pytest.approx(2**1.3 / 1.3)


@pytest.mark.parametrize("case", range(100))
def test_phr_matches_piecewise_oracle(case):
    rng = np.random.default_rng([11, case])
    n = int(rng.integers(2, 51))
    x = rng.exponential(1.0, n)
    if case % 5 == 0:
        x = np.round(x, 1)  # force ties
    alpha, beta = float(rng.uniform(0.2, 3)), float(rng.choice([0.0, 0.3, 1.0, 2.5]))
    c = float(rng.choice([0.0, 1.0, 2.4]))
    assert estimate_wfgcri_phr(x, alpha, beta, c) == pytest.approx(
        oracle_phr(x, alpha, beta, c), rel=1e-12)


@pytest.mark.parametrize("case", range(100))
def test_two_sample_matches_piecewise_oracle(case):
    rng = np.random.default_rng([12, case])
    x = rng.exponential(1.0, int(rng.integers(1, 51)))
    y = rng.weibull(1.5, int(rng.integers(1, 51)))
    if case % 5 == 0:
        x, y = np.round(x, 1), np.round(y, 1)
    beta = float(rng.choice([0.0, 0.5, 1.0, 2.0]))
    c = float(rng.choice([0.0, 1.0, 0.3]))
    est = estimate_wfgcri_two_sample(x, y, beta, c)
    ref = oracle_two_sample(x, y, beta, c)
    assert est == pytest.approx(ref, rel=1e-12, abs=1e-300)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=30),
       st.lists(st.floats(0, 10), min_size=1, max_size=30),
       st.floats(0.1, 10), st.floats(0, 3))
def test_two_sample_scales_by_square(x, y, a, beta):
    base = estimate_wfgcri_two_sample(x, y, beta)
    scaled = estimate_wfgcri_two_sample(np.multiply(x, a), np.multiply(y, a), beta)
    assert scaled == pytest.approx(a * a * base, rel=1e-12, abs=1e-300)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=1, max_size=30),
       st.lists(st.floats(0, 10), min_size=1, max_size=30), st.randoms())
def test_two_sample_order_invariant(x, y, rnd):
    a = estimate_wfgcri_two_sample(x, y, 0.7)
    rnd.shuffle(x)
    rnd.shuffle(y)
    assert estimate_wfgcri_two_sample(x, y, 0.7) == a


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 10), min_size=2, max_size=30), st.floats(0.1, 5), st.floats(0, 4))
def test_estimates_finite_nonnegative(x, alpha, beta):
    v = estimate_wfgcri_phr(x, alpha, beta)
    assert math.isfinite(v) and v >= 0


def test_consistency_trend():
    lam1, lam2, lam, alpha, beta = 2.5, 3.5, 0.8, 0.5, 0.5
    true_two = wfgcri_closed_form_exp(lam1, lam2, beta)
    true_phr = alpha**beta * (beta + 1) / lam**2
    med_two, med_phr = [], []
    for n in (100, 1000, 10_000):
        e2, e1 = [], []
        for r in range(50):
            seq = np.random.SeedSequence([99, n, r])
            sx, sy = seq.spawn(2)
            x = Exponential(lam1).sample(n, sx)
            y = Exponential(lam2).sample(n, sy)
            e2.append(abs(estimate_wfgcri_two_sample(x, y, beta) - true_two))
            e1.append(abs(estimate_wfgcri_phr(Exponential(lam).sample(n, seq), alpha, beta)
                          - true_phr))
        med_two.append(np.median(e2))
        med_phr.append(np.median(e1))
    assert med_two[0] > med_two[1] > med_two[2]
    assert med_phr[0] > med_phr[1] > med_phr[2]
