"""Adaptive Gauss-Kronrod engine, exercised on integrals with known values."""

import math

import numpy as np
import pytest

from spdckit import quadrature


def test_low_degree_polynomial_single_panel():
    # x^8 over [0, 1] = 1/9; well inside the 15-point rule's exactness.
    res = quadrature.integrate(lambda x: x**8 + 0j, 0.0, 1.0)
    assert res.n_panels == 1
    assert abs(res.value - 1.0 / 9.0) < 1e-15


def test_complex_exponential():
    # Int_0^1 e^{ix} dx = sin(1) + i (1 - cos(1)).
    res = quadrature.integrate(lambda x: np.exp(1j * x), 0.0, 1.0, rel_tol=1e-12)
    expected = complex(math.sin(1.0), 1.0 - math.cos(1.0))
    assert abs(res.value - expected) < 1e-13
    assert res.est_error < 1e-12


def test_vector_integrand():
    # Rows [1, x, x^2] over [0, 2] -> [2, 2, 8/3], one pass.
    def f(x):
        return np.stack([np.ones_like(x), x, x**2]).astype(complex)

    res = quadrature.integrate(f, 0.0, 2.0)
    assert np.asarray(res.value).shape == (3,)
    assert np.allclose(res.value, [2.0, 2.0, 8.0 / 3.0], rtol=1e-14, atol=0)


def test_sharp_peak_forces_subdivision():
    # Lorentzian of width 1e-3 around the midpoint of [-1, 1].
    a = 1e-3

    def f(x):
        return 1.0 / (x**2 + a**2) + 0j

    res = quadrature.integrate(f, -1.0, 1.0, rel_tol=1e-10)
    expected = (2.0 / a) * math.atan(1.0 / a)
    assert abs(res.value - expected) / expected < 1e-10
    assert res.n_panels > 10
    assert res.n_evaluations == 15 * (2 * res.n_panels - 1)


def test_oscillatory_high_frequency():
    # Int_0^1 cos(200 x) dx = sin(200)/200.
    res = quadrature.integrate(lambda x: np.cos(200.0 * x) + 0j, 0.0, 1.0, rel_tol=1e-11)
    assert abs(res.value - math.sin(200.0) / 200.0) < 1e-12


def test_panel_budget_exhausted():
    with pytest.raises(quadrature.QuadratureError, match="panels"):
        quadrature.integrate(
            lambda x: np.cos(200.0 * x) + 0j, 0.0, 1.0, rel_tol=1e-12, max_panels=2
        )


def test_interval_and_tolerance_validation():
    f = lambda x: x + 0j  # noqa: E731
    with pytest.raises(ValueError, match="b > a"):
        quadrature.integrate(f, 1.0, 1.0)
    with pytest.raises(ValueError, match="rel_tol"):
        quadrature.integrate(f, 0.0, 1.0, rel_tol=0.0)


def test_non_finite_integrand_rejected():
    def f(x):
        out = np.ones_like(x, dtype=complex)
        out[x > 0] = np.inf
        return out

    with pytest.raises(ValueError, match="non-finite"):
        quadrature.integrate(f, -1.0, 1.0)


def test_non_vectorized_integrand_rejected():
    with pytest.raises(ValueError, match="vectorized"):
        quadrature.integrate(lambda x: 1.0 + 0j, 0.0, 1.0)


def test_deterministic_replay():
    def f(x):
        return np.exp(-1j * 40.0 * x) / (x - 0.3j)

    r1 = quadrature.integrate(f, -0.5, 0.5, rel_tol=1e-11)
    r2 = quadrature.integrate(f, -0.5, 0.5, rel_tol=1e-11)
    assert r1.value == r2.value
    assert r1.n_panels == r2.n_panels


def test_rule_weights_sum_to_interval_length():
    # Kronrod and Gauss weights both integrate the constant exactly.
    assert abs(quadrature.KRONROD_WEIGHTS.sum() - 2.0) < 1e-14
    assert abs(quadrature.GAUSS_WEIGHTS.sum() - 2.0) < 1e-14
