import math

import numpy as np
import pytest
from scipy import integrate as sp_integrate

from wfgcri.exceptions import DivergenceError, IntegrationError
from wfgcri.quadrature import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, integrate


def test_rule_weights():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    gx, gw = np.polynomial.legendre.leggauss(10)
    mask = GAUSS_WEIGHTS > 0
    np.testing.assert_allclose(np.sort(NODES[mask]), gx, atol=1e-15)
    np.testing.assert_allclose(GAUSS_WEIGHTS[mask][np.argsort(NODES[mask])], gw, atol=1e-15)


@pytest.mark.parametrize("degree", range(0, 32))
def test_kronrod_exact_on_polynomials(degree):
    exact = (1 - (-1) ** (degree + 1)) / (degree + 1)
    assert KRONROD_WEIGHTS @ NODES**degree == pytest.approx(exact, abs=1e-14)


@pytest.mark.parametrize("f, a, b", [
    (np.exp, 0.0, 1.0),
    (lambda x: np.sqrt(x), 0.0, 1.0),
    (lambda x: np.log(x) ** 2, 1e-300, 1.0),
    (lambda x: x**-0.5 * np.exp(-x), 0.0, 30.0),
    (lambda x: np.sin(10 * x) ** 2, 0.0, 3.0),
])
def test_matches_scipy(f, a, b):
    ours = integrate(f, a, b, rel_tol=1e-11, abs_tol=1e-13)
    ref, _ = sp_integrate.quad(lambda x: float(f(np.array([x]))[0]), a, b,
                               epsabs=1e-13, epsrel=1e-12, limit=500)
    assert ours.value == pytest.approx(ref, rel=1e-9)
    assert ours.error <= max(1e-13, 1e-11 * abs(ours.value))


def test_breakpoints_used():
    f = lambda x: np.where(x < 1.3, 1.0, 0.0)
    assert integrate(f, 0.0, 2.0, points=(1.3,)).value == pytest.approx(1.3, abs=1e-14)


def test_empty_interval():
    assert integrate(np.exp, 1.0, 1.0).value == 0.0


def test_nonfinite_integrand_is_divergence():
    with pytest.raises(DivergenceError), np.errstate(divide="ignore", over="ignore"):
        integrate(lambda x: 1.0 / x, 0.0, 1.0)


def test_budget_exhaustion_carries_diagnostics():
    f = lambda x: np.abs(np.sin(1 / np.maximum(x, 1e-300)))
    with pytest.raises(IntegrationError) as info:
        integrate(f, 1e-12, 1.0, rel_tol=1e-14, abs_tol=1e-16, max_subdivisions=20)
    diag = info.value.diagnostics()
    assert diag["subdivisions"] is not None and math.isfinite(diag["value"])
