import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wfgcri.chaos import (MapSpec, beta_grid, bifurcation_data, iterate, ricker_step,
                          tent_step, wfgcri_curve)
from wfgcri.exceptions import DomainError


@pytest.mark.parametrize("r", [0.5, 2.0, 4.9])
def test_ricker_fixed_point(r):
    assert ricker_step(1.0, r) == 1.0


def test_ricker_first_step():
    assert iterate(MapSpec("ricker", 1.0, 0.01, 2))[1] == pytest.approx(0.01 * math.exp(0.99),
                                                                        rel=1e-15)


def test_tent_branches():
    assert tent_step(0.25, 2.0) == 0.5
    assert tent_step(0.75, 2.0) == 0.5


@pytest.mark.parametrize("make", [
    lambda: MapSpec("logistic", 3.0),
    lambda: MapSpec("ricker", 0.0),
    lambda: MapSpec("ricker", 1.0, x0=0.0),
    lambda: MapSpec("tent", 2.5),
    lambda: MapSpec("tent", 1.0, x0=1.5),
    lambda: MapSpec("tent", 1.0, n=1),
])
def test_map_validation(make):
    with pytest.raises(DomainError):
        make()


def test_iterate_is_reproducible_and_burn_in_shifts():
    a = iterate(MapSpec("ricker", 3.7, n=300))
    assert np.array_equal(a, iterate(MapSpec("ricker", 3.7, n=300)))
    b = iterate(MapSpec("ricker", 3.7, n=200, burn_in=100))
    assert np.array_equal(a[100:], b)


@settings(max_examples=40, deadline=None)
@given(r=st.floats(0.01, 2.0), x0=st.floats(0.0, 1.0))
def test_tent_stays_in_unit_interval(r, x0):
    x = iterate(MapSpec("tent", r, x0, 500))
    assert np.all((x >= 0) & (x <= 1))


@settings(max_examples=40, deadline=None)
@given(r=st.floats(0.01, 5.0), x0=st.floats(1e-6, 5.0))
def test_ricker_stays_positive(r, x0):
    assert np.all(iterate(MapSpec("ricker", r, x0, 500)) > 0)


def test_bifurcation_stable_fixed_point():
    data = bifurcation_data("ricker", (1.5, 1.6), 2, transient=500, keep=50)
    kept = data[data[:, 0] == 1.5, 1]
    assert kept.size == 50 and np.all(np.abs(kept - 1.0) < 1e-6)


def test_bifurcation_period_two():
    data = bifurcation_data("ricker", (2.3, 2.4), 2, transient=500, keep=50)
    kept = data[data[:, 0] == 2.3, 1]
    np.testing.assert_allclose(kept[2:], kept[:-2], atol=1e-6)
    assert abs(kept[0] - kept[1]) > 0.1
    assert np.unique(np.round(kept, 6)).size == 2


def test_bifurcation_tent_contraction():
    data = bifurcation_data("tent", (0.9, 0.95), 2, x0=0.7, transient=500, keep=20)
    assert np.all(np.abs(data[:, 1]) < 1e-3)


def test_bifurcation_validation():
    with pytest.raises(DomainError):
        bifurcation_data("ricker", (1, 2), 1)


def test_beta_grid():
    g = beta_grid(0.01, 5.0, 0.01)
    assert g.size == 500 and g[0] == 0.01 and g[-1] == 5.0


@pytest.fixture(scope="module")
def ricker_curves():
    return wfgcri_curve("ricker", [1, 3.1, 3.5, 4.0, 4.5, 4.9], beta_grid(0.01, 5, 0.01))


def test_ricker_top_curve_dominates(ricker_curves):
    v = ricker_curves.values
    assert np.all(v[-1] > v[0])


def test_ricker_mean_ordering(ricker_curves):
    means = ricker_curves.values.mean(axis=1)
    assert np.all(np.diff(means) > 0)


def test_curves_finite_nonnegative(ricker_curves):
    assert np.all(np.isfinite(ricker_curves.values)) and np.all(ricker_curves.values >= 0)


def test_tent_low_r_near_zero():
    curve = wfgcri_curve("tent", [1.0], beta_grid(0.01, 2, 0.01))
    assert np.all(np.abs(curve.values) < 0.05)


def test_constant_trajectory_is_degenerate():
    curve = wfgcri_curve("ricker", [2.0], [0.5, 1.0], x0=1.0)
    assert curve.degenerate[0] and np.all(curve.values == 0)
    rows = list(curve.rows())
    assert rows[0] == (2.0, 0.5, 0.0, True)
