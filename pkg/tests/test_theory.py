import math

import mpmath
import pytest

from wfgcri.distributions import Exponential, MixtureHazard, Rayleigh, Truncated, Weibull
from wfgcri.theory import (THEOREMS, BoundCheck, affine_image, check_finite_support_bounds_T2_7,
                           check_lower_bound_T2_1, check_mixture_bound_T2_9,
                           check_monotonicity_T2_3_T2_4, check_phr_scaling_T3_2,
                           check_stochastic_order_bounds, check_weight_power_bound_T2_8,
                           random_suite, run_config, stochastically_le)


def test_bound_check_fields():
    c = check_lower_bound_T2_1(Exponential(1), Exponential(2), 0.5, 1.0, "i")
    assert isinstance(c, BoundCheck) and c.holds is True
    assert c.slack == pytest.approx(c.lhs - c.rhs)
    assert len(c.config_hash) == 12


def test_lower_bound_i_equality_at_beta_zero():
    c = check_lower_bound_T2_1(Exponential(1), Exponential(1), 0.0, 0.0, "i")
    assert c.holds and c.lhs == pytest.approx(1.0, rel=1e-9)
    assert c.rhs == pytest.approx(c.lhs, rel=1e-9)


def test_lower_bound_ii_example():
    c = check_lower_bound_T2_1(Exponential(1), Exponential(1), 1.0, 1.0, "ii")
    assert c.holds
    assert c.lhs == pytest.approx(2.0, rel=1e-8)
    # D = E[ln X - X + ln X] and H = 1 for Exp(1): exp(-2 euler_gamma)
    assert c.rhs == pytest.approx(math.exp(-2 * float(mpmath.euler)), rel=1e-7)


def test_stochastic_order_upper_bound():
    c = check_stochastic_order_bounds(Exponential(2), Exponential(1), 0.7, 1.0, "X_le_st_Y")
    assert c.status == "holds"


def test_stochastic_order_equality_case():
    x = Weibull(1.3, 0.9)
    c = check_stochastic_order_bounds(x, x, 1.2, 1.0)
    assert c.holds and abs(c.slack) <= 1e-9 * c.lhs


def test_stochastic_order_lower_bound():
    c = check_stochastic_order_bounds(Exponential(1), Exponential(2), 1.3, 2.0, "X_ge_st_Y")
    assert c.status == "holds"


def test_stochastic_order_premise():
    c = check_stochastic_order_bounds(Exponential(1), Exponential(2), 1.0, 1.0, "X_le_st_Y")
    assert c.status == "premise_violated" and c.holds is None
    crossing = check_stochastic_order_bounds(Weibull(0.5, 1.0), Weibull(3.0, 1.0), 1.0, 1.0)
    assert crossing.status == "premise_violated"


def test_stochastically_le_grid():
    assert stochastically_le(Exponential(2), Exponential(1))
    assert not stochastically_le(Exponential(1), Exponential(2))


@pytest.mark.parametrize("models", [
    (Exponential(3), Exponential(2), Exponential(1)),
    (Exponential(2), Weibull(1.0, 1.5), Exponential(1)),
])
def test_monotonicity_examples(models):
    beta = 0.5 if models[1] == Exponential(2) else 1.0
    checks = check_monotonicity_T2_3_T2_4(*models, beta, 1.0)
    assert [c.theorem for c in checks] == ["T2_3", "T2_3", "T2_4"]
    assert all(c.holds for c in checks)


def test_two_triangle_equality_case():
    x = Rayleigh(0.8)
    checks = check_monotonicity_T2_3_T2_4(x, x, x, 0.9, 1.0)
    assert all(c.holds for c in checks)
    assert checks[2].lhs == pytest.approx(checks[2].rhs, rel=1e-12)


def test_monotonicity_premise():
    checks = check_monotonicity_T2_3_T2_4(Exponential(1), Exponential(2), Exponential(3), 1, 1)
    assert all(c.status == "premise_violated" for c in checks)


def test_finite_support_examples():
    x = Truncated(Exponential(1), 0.5, 3.0)
    y = Truncated(Exponential(2), 0.5, 3.0)
    assert check_finite_support_bounds_T2_7(x, y, 2.0, 1.0).status == "holds"
    assert check_finite_support_bounds_T2_7(x, y, 0.5, 1.0).status == "holds"
    i = check_finite_support_bounds_T2_7(x, y, 1.0, 0.0, "i")
    ii = check_finite_support_bounds_T2_7(x, y, 1.0, 0.0, "ii")
    assert i.holds and ii.holds
    assert i.rhs == pytest.approx(ii.rhs, rel=1e-15) and i.lhs == pytest.approx(i.rhs, rel=1e-9)


def test_finite_support_premises():
    x = Truncated(Exponential(1), 0.5, 3.0)
    assert check_finite_support_bounds_T2_7(x, Exponential(1), 2.0).status == "premise_violated"
    assert check_finite_support_bounds_T2_7(x, x, 0.5, 1.0, "i").status == "premise_violated"


def test_weight_power_bound_examples():
    ge = check_weight_power_bound_T2_8(Exponential(1), Exponential(2), 2.0, 1.0)
    le = check_weight_power_bound_T2_8(Exponential(2), Exponential(1), 0.5, 1.0)
    eq = check_weight_power_bound_T2_8(Exponential(1.3), Rayleigh(0.6), 1.0, 1.0)
    assert ge.holds and le.holds and eq.holds
    assert eq.lhs == pytest.approx(eq.rhs, rel=1e-12)


def test_weight_power_bound_counterexample():
    # the stated direction fails when X has a long tail relative to zeta
    c = check_weight_power_bound_T2_8(Exponential(0.1), Exponential(1.0), 2.0, 1.0)
    # closed forms: lhs = Gamma(5)/Gamma(3) / 0.1**5, rhs = (2 / 0.1**3)**2 / 2
    assert c.lhs == pytest.approx(12 / 0.1**5, rel=1e-8)
    assert c.rhs == pytest.approx((2 / 0.1**3) ** 2 / 2, rel=1e-8)
    assert c.status == "violated" and c.holds is False


def test_mixture_example():
    comps = [(0.3, Exponential(1.2)), (0.4, Exponential(1.5)), (0.3, Exponential(2.5))]
    c = check_mixture_bound_T2_9(comps, Exponential(1.0), 1.0, 1.0)
    assert c.lhs == pytest.approx(2 / 1.71**3, rel=1e-8)
    expected = sum(p * 2 / lam**3 for p, lam in [(0.3, 1.2), (0.4, 1.5), (0.3, 2.5)])
    assert c.rhs == pytest.approx(expected, rel=1e-8)
    assert c.rhs == pytest.approx(0.622659, abs=1e-6)
    assert c.holds


def test_mixture_identical_components_equality():
    comp = Weibull(1.4, 0.9)
    c = check_mixture_bound_T2_9([(0.6, comp), (0.4, comp)], Rayleigh(1.1), 0.8, 1.0)
    assert c.holds and c.lhs == pytest.approx(c.rhs, rel=1e-9)


def test_phr_scaling_examples():
    x, y = Weibull(2.0, 1.0), Weibull(2.0, 2.0)
    up = check_phr_scaling_T3_2(x, y, 2.0, 1.0, 1.0, 0.0)
    assert up.holds
    assert up.lhs == pytest.approx(2 / (2 * 2 * 1), rel=1e-8)
    assert up.rhs == pytest.approx(2 * 2 / (2 * 1), rel=1e-8)
    eq = check_phr_scaling_T3_2(x, y, 1.0, 1.3, 1.0, 0.5)
    assert eq.holds and eq.lhs == pytest.approx(eq.rhs, rel=1e-12)
    down = check_phr_scaling_T3_2(Exponential(0.8), Exponential(0.8), 0.5, 0.7, 1.0, 0.3)
    assert down.holds


def test_overflow_is_inconclusive():
    c = check_lower_bound_T2_1(Exponential(1e-3), Exponential(1e-3), 25.0, 2.0, "ii")
    assert c.status in ("holds", "inconclusive")
    assert c.holds in (True, None)


@pytest.mark.parametrize("scale, shift", [(2.0, 0.0), (0.5, 1.0)])
def test_order_checks_affine_invariant(scale, shift):
    x, y, z = Exponential(3), Weibull(1.2, 1.5), Exponential(0.7)
    base = ([check_stochastic_order_bounds(x, y, 0.8, 1.0).status]
            + [c.status for c in check_monotonicity_T2_3_T2_4(x, y, z, 0.8, 1.0)])
    tx, ty, tz = (affine_image(m, scale, shift) for m in (x, y, z))
    moved = ([check_stochastic_order_bounds(tx, ty, 0.8, 1.0).status]
             + [c.status for c in check_monotonicity_T2_3_T2_4(tx, ty, tz, 0.8, 1.0)])
    assert moved == base


def test_run_config_reproducible():
    a = run_config("T2_2", 17, seed=5)
    b = run_config("T2_2", 17, seed=5)
    assert a == b
    assert random_suite("T2_2", 20, seed=5)[17] == a[0]


@pytest.mark.parametrize("theorem", [t for t in THEOREMS if t != "T2_8"])
def test_small_random_suite_has_no_violations(theorem):
    checks = random_suite(theorem, 25, seed=1)
    assert {c.status for c in checks} <= {"holds", "premise_violated"}
    assert any(c.status == "holds" for c in checks)
