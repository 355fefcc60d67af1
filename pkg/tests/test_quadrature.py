import numpy as np
import pytest

from remcalc import QuadratureError, adaptive_gauss_legendre


def test_polynomial_is_exact():
    assert np.isclose(adaptive_gauss_legendre(lambda x: x**10, 0.0, 1.0), 1 / 11, rtol=1e-14)


def test_oscillatory():
    val = adaptive_gauss_legendre(lambda x: np.cos(50 * x), 0.0, 3.0)
    assert np.isclose(val, np.sin(150) / 50, rtol=1e-10, atol=1e-13)


def test_reversed_and_empty_interval():
    f = np.exp
    assert np.isclose(adaptive_gauss_legendre(f, 1.0, 0.0), -(np.e - 1))
    assert adaptive_gauss_legendre(f, 2.0, 2.0) == 0


def test_vector_valued():
    val = adaptive_gauss_legendre(lambda x: np.stack([x, x**2], axis=1), 0.0, 2.0)
    assert np.allclose(val, [2.0, 8.0 / 3])


def test_scalar_callable():
    val = adaptive_gauss_legendre(lambda x: np.array([np.sin(x), 1.0]), 0.0, np.pi, vectorized=False)
    assert np.allclose(val, [2.0, np.pi])


def test_breakpoints_for_kinks():
    f = lambda x: np.abs(x - 0.3)
    val = adaptive_gauss_legendre(f, 0.0, 1.0, breakpoints=(0.3,))
    assert np.isclose(val, 0.3**2 / 2 + 0.7**2 / 2, rtol=1e-14)


def test_failure_reports_estimate():
    with pytest.raises(QuadratureError) as exc:
        adaptive_gauss_legendre(lambda x: 1 / np.sqrt(np.abs(x - 1 / 3)), 0.0, 1.0, rtol=1e-14, max_depth=3)
    err = exc.value
    assert err.code == "quadrature_failed"
    assert err.error_bound > 0
    assert np.isfinite(err.estimate)
