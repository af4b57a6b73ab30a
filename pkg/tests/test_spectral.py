import numpy as np
import pytest

from hilbmod.core import GridKind, Horizon, InvalidArgument, SampledSignal, l2_inner, make_grid
from hilbmod.spectral import (
    SineSeries,
    circular_hilbert,
    composite_gauss_legendre,
    ht_series,
    ht_spectral,
    ht_via_circular,
    series_derivative,
    series_eval,
    sine_coefficients,
)

from .reference import EXAMPLE1_AT_HALF, XSQ_REFERENCE


def test_composite_rule_is_exact_for_polynomials():
    x, w = composite_gauss_legendre(-1.0, 3.0, 100)
    assert np.sum(w * x**7) == pytest.approx((3.0**8 - 1.0) / 8, rel=1e-13)


def test_coefficients_of_constant():
    # (2/T) int_0^1 sin((k + 1/2) pi s) ds = 2 / ((k + 1/2) pi)
    series = sine_coefficients(lambda s: 1.0, 1.0, 50)
    k = np.arange(50)
    np.testing.assert_allclose(series.coeffs, 2.0 / ((k + 0.5) * np.pi), rtol=1e-12)
    assert series.coeffs[0] == pytest.approx(1.2732395447, abs=1e-10)


def test_coefficients_of_first_mode():
    series = sine_coefficients(lambda s: np.sin(np.pi * s / 2), 1.0, 20)
    assert series.coeffs[0] == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(series.coeffs[1:], 0.0, atol=1e-14)


def test_coefficients_of_example_two():
    series = sine_coefficients(lambda s: np.sin(np.pi * s), 0.5, 20)
    assert series.coeffs[0] == pytest.approx(1.0, abs=1e-14)
    np.testing.assert_allclose(series.coeffs[1:], 0.0, atol=1e-14)


def test_coefficients_reject_underresolved_quadrature():
    with pytest.raises(InvalidArgument):
        sine_coefficients(np.sin, 1.0, 10, quad_nodes=99)


def test_ht_spectral_single_term():
    series = SineSeries([1.0], Horizon(1.0))
    assert ht_spectral(series, 0.5) == pytest.approx(np.cos(np.pi / 4), abs=1e-15)


def test_ht_spectral_example_two():
    series = sine_coefficients(lambda s: np.sin(np.pi * s), 0.5, 4)
    assert ht_spectral(series, 0.25) == pytest.approx(0.7071067811865476, abs=1e-13)


def test_ht_of_constant_tends_to_zero_at_T():
    # closed form -(2/pi) log tan(pi/4) = 0 at t = T; the plain series converges to it
    series = sine_coefficients(lambda s: 1.0, 1.0, 2000)
    assert ht_spectral(series, 1.0) == pytest.approx(0.0, abs=1e-12)


def test_series_eval():
    assert series_eval(SineSeries([1.0], Horizon(1.0)), 1.0) == pytest.approx(1.0)
    assert series_eval(SineSeries(np.zeros(5), Horizon(1.0)), 0.3) == 0.0


def test_series_reconstructs_constant():
    # direct partial sum oracle: sum_k 2/((k+1/2)pi) sin((k+1/2) pi/2)
    k = np.arange(1000)
    oracle = np.sum(2.0 / ((k + 0.5) * np.pi) * np.sin((k + 0.5) * np.pi * 0.5))
    value = series_eval(sine_coefficients(lambda s: 1.0, 1.0, 1000), 0.5)
    assert value == pytest.approx(oracle, abs=1e-12)
    assert value == pytest.approx(1.0, abs=2e-3)


@pytest.mark.parametrize("k", range(16))
def test_basis_exactness(k):
    T = 1.0
    w = (k + 0.5) * np.pi / T
    series = sine_coefficients(lambda s: np.sin(w * s), T, 32, quad_nodes=320)
    t = np.linspace(0.0, T, 1000)
    np.testing.assert_allclose(ht_spectral(series, t), np.cos(w * t), atol=1e-12)


def test_parseval():
    T = 1.0
    phi = lambda t: np.exp(t) * t
    series = sine_coefficients(phi, T, 256)
    grid = make_grid(T, 128, "gauss-legendre")
    a = SampledSignal.from_function(phi, grid, T)
    assert l2_inner(a, a) == pytest.approx(T / 2 * np.sum(series.coeffs**2), rel=1e-6)


def test_series_derivative():
    series = sine_coefficients(lambda s: np.sin(np.pi * s / 2) + 0.5 * np.sin(5 * np.pi * s / 2), 1.0, 8)
    d = series_derivative(series)
    t = np.linspace(0, 1, 11)
    expected = np.pi / 2 * np.cos(np.pi * t / 2) + 1.25 * np.pi * np.cos(5 * np.pi * t / 2)
    np.testing.assert_allclose(d(t), expected, atol=1e-12)


def test_circular_hilbert_of_sine():
    grid = make_grid(0.5, 64, GridKind.PERIODIC_UNIFORM)
    samples = SampledSignal.from_function(lambda s: np.sin(np.pi * s), grid, 0.5)
    np.testing.assert_allclose(circular_hilbert(samples).values, -np.cos(np.pi * grid.nodes), atol=1e-12)


def test_circular_hilbert_of_cosine():
    grid = make_grid(1.0, 64, GridKind.PERIODIC_UNIFORM)
    samples = SampledSignal.from_function(lambda s: np.cos(np.pi * s / 2), grid, 1.0)
    np.testing.assert_allclose(circular_hilbert(samples).values, np.sin(np.pi * grid.nodes / 2), atol=1e-12)


def test_circular_hilbert_kills_constants():
    grid = make_grid(1.0, 32, GridKind.PERIODIC_UNIFORM)
    out = circular_hilbert(SampledSignal(grid, np.full(32, 3.0), Horizon(1.0)))
    np.testing.assert_allclose(out.values, 0.0, atol=1e-15)


def test_circular_hilbert_input_checks():
    uniform = make_grid(1.0, 32, "uniform-interior")
    with pytest.raises(InvalidArgument):
        circular_hilbert(SampledSignal(uniform, np.zeros(32), Horizon(1.0)))
    odd = make_grid(1.0, 33, GridKind.PERIODIC_UNIFORM)
    with pytest.raises(InvalidArgument):
        circular_hilbert(SampledSignal(odd, np.zeros(33), Horizon(1.0)))


def test_circular_hilbert_squared_is_minus_identity(rng):
    M = 256
    grid = make_grid(1.0, M, GridKind.PERIODIC_UNIFORM)
    k = np.arange(1, 40)
    a, b = rng.normal(size=(2, k.size))
    x = grid.nodes[:, None] * k * np.pi / 2
    values = np.cos(x) @ a + np.sin(x) @ b
    signal = SampledSignal(grid, values, Horizon(1.0))
    twice = circular_hilbert(circular_hilbert(signal))
    np.testing.assert_allclose(twice.values, -values, atol=1e-10)


def test_via_circular_example_two():
    grid = make_grid(0.5, 9, "uniform-interior")
    out = ht_via_circular(lambda s: np.sin(np.pi * s), 0.5, 64, grid)
    np.testing.assert_allclose(out.values, np.cos(np.pi * grid.nodes), atol=1e-10)


def test_via_circular_constant_without_split():
    # only the jump of the reflection limits accuracy here
    grid = make_grid(1.0, 9, "uniform-interior")
    out = ht_via_circular(lambda s: 1.0, 1.0, 4096, grid, split_constant=False)
    assert out.values[4] == pytest.approx(0.561100, abs=5e-3)
    assert ht_via_circular(lambda s: 1.0, 1.0, 4096, grid).values[4] == pytest.approx(EXAMPLE1_AT_HALF, abs=1e-14)


def test_via_circular_zero():
    grid = make_grid(1.0, 9, "uniform-interior")
    np.testing.assert_array_equal(ht_via_circular(lambda s: 0.0, 1.0, 64, grid).values, 0.0)


def test_via_circular_rejects_bad_M():
    with pytest.raises(InvalidArgument):
        ht_via_circular(np.sin, 1.0, 63)
    with pytest.raises(InvalidArgument):
        ht_via_circular(np.sin, 1.0, 32)


@pytest.mark.parametrize("t", sorted(XSQ_REFERENCE))
def test_series_and_circular_match_reference(t):
    phi = lambda s: s**2
    grid = make_grid(1.0, 2, "uniform-interior")
    grid = type(grid)(np.array([t]), None, grid.kind)
    assert ht_series(phi, 1.0, t) == pytest.approx(XSQ_REFERENCE[t], abs=5e-6)
    assert ht_via_circular(phi, 1.0, out_grid=grid).values[0] == pytest.approx(XSQ_REFERENCE[t], abs=5e-6)


def test_via_circular_agrees_with_series_on_smooth_functions():
    grid = make_grid(1.0, 200, "uniform-interior")
    inside = (grid.nodes >= 0.05) & (grid.nodes <= 0.95)
    for phi in (lambda s: s**2, lambda s: s**3 - s**2, lambda s: np.sin(np.pi * s / 2) * np.exp(s)):
        a = ht_series(phi, 1.0, grid.nodes)
        b = ht_via_circular(phi, 1.0, out_grid=grid).values
        assert np.max(np.abs(a - b)[inside]) <= 1e-5
