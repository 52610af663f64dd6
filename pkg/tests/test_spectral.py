import numpy as np
import pytest

from vfe import spectral as sp
from vfe.errors import UsageError


def grid(n, L=3.0):
    ds = L / n
    return np.arange(n) * ds, ds, L


def test_single_mode_derivatives():
    s, ds, L = grid(64)
    k = 2 * np.pi / L
    f = np.sin(k * s)
    np.testing.assert_allclose(sp.periodic_derivative(f, ds), k * np.cos(k * s), atol=1e-10)
    np.testing.assert_allclose(sp.periodic_derivative(f, ds, order=2), -k * k * f, atol=1e-10)


def test_constant_field_derivative_is_exactly_zero():
    f = np.full(32, 4.2)
    assert np.all(sp.periodic_derivative(f, 0.1) == 0.0)
    assert np.all(sp.periodic_derivative(f, 0.1, order=2) == 0.0)


def test_vector_fields_and_complex_input():
    s, ds, L = grid(48)
    k = 2 * np.pi / L
    f = np.stack([np.cos(k * s), np.sin(2 * k * s)], axis=1)
    d = sp.periodic_derivative(f, ds)
    np.testing.assert_allclose(d[:, 0], -k * np.sin(k * s), atol=1e-11)
    np.testing.assert_allclose(d[:, 1], 2 * k * np.cos(2 * k * s), atol=1e-11)
    z = np.exp(3j * k * s)
    np.testing.assert_allclose(sp.periodic_derivative(z, ds), 3j * k * z, atol=1e-10)


def test_too_few_samples():
    with pytest.raises(UsageError):
        sp.periodic_derivative(np.ones(3), 1.0)


def test_central_is_second_order():
    errs = []
    for n in (32, 64, 128):
        s, ds, L = grid(n)
        k = 2 * np.pi / L
        errs.append(np.max(np.abs(sp.central_derivative(np.sin(k * s), ds) - k * np.cos(k * s))))
    np.testing.assert_allclose(np.array(errs[:-1]) / errs[1:], 4.0, rtol=0.05)


@pytest.mark.parametrize("base", [0, 5, 31])
def test_quasi_periodic_derivative_of_twisted_wave(base):
    # exp(i b s) on a loop whose length is not a multiple of 2 pi / b
    n, L, b = 32, 2 * np.pi, 1.37
    ds = L / n
    s = sp.seam_positions(n, ds, base)
    f = np.exp(1j * b * s)
    np.testing.assert_allclose(sp.quasi_periodic_derivative(f, ds, b * L, base_index=base), 1j * b * f, atol=1e-12)
    np.testing.assert_allclose(sp.quasi_periodic_derivative(f, ds, b * L, order=2, base_index=base),
                               -b * b * f, atol=1e-11)
    c = sp.quasi_periodic_central(f, ds, b * L, base_index=base)
    assert np.max(np.abs(c - 1j * b * f)) < b**3 * ds**2


def test_trapezoid_running_integral():
    s, ds, L = grid(64)
    f = 1.5 + np.cos(2 * np.pi * s / L)
    run, total = sp.cumulative_trapezoid_periodic(f, ds)
    assert run[0] == 0.0
    assert total == pytest.approx(1.5 * L, rel=1e-14)
    np.testing.assert_allclose(run, 1.5 * s + L / (2 * np.pi) * np.sin(2 * np.pi * s / L), atol=1e-2)
    spec, total2 = sp.cumulative_spectral_periodic(f, ds)
    np.testing.assert_allclose(spec, 1.5 * s + L / (2 * np.pi) * np.sin(2 * np.pi * s / L), atol=1e-13)
    assert total2 == pytest.approx(total, rel=1e-14)


def test_running_integral_from_base_index():
    s, ds, L = grid(40)
    tau = np.full(40, 0.7)
    run, total = sp.cumulative_trapezoid_periodic(tau, ds, base_index=10)
    assert run[10] == 0.0
    np.testing.assert_allclose(run, 0.7 * sp.seam_positions(40, ds, 10), atol=1e-14)


@pytest.mark.parametrize("n,m", [(32, 64), (33, 99), (32, 32), (17, 64)])
def test_upsample_is_exact_for_band_limited_data(n, m):
    u = np.arange(n) * 2 * np.pi / n
    f = np.cos(u) + 0.3 * np.sin(3 * u)
    v = np.arange(m) * 2 * np.pi / m
    np.testing.assert_allclose(sp.upsample(f, m), np.cos(v) + 0.3 * np.sin(3 * v), atol=1e-13)


def test_fourier_evaluate_interpolates():
    n = 16
    u = np.arange(n) * 2 * np.pi / n
    f = np.stack([np.cos(2 * u), np.sin(u)], axis=1)
    c = sp.fourier_coefficients(f)
    x = np.array([0.1, 1.7, 4.0])
    np.testing.assert_allclose(sp.fourier_evaluate(c, x), np.stack([np.cos(2 * x), np.sin(x)], 1), atol=1e-13)
    np.testing.assert_allclose(sp.fourier_evaluate(c, x, derivative=1),
                               np.stack([-2 * np.sin(2 * x), np.cos(x)], 1), atol=1e-12)
