import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skdensity import ConfigError, SingularSymbolError, SolveError
from skdensity.oracle import periodic_dense_fundamental, periodic_dense_solve
from skdensity.torus import (
    BernoulliKernel,
    PeriodicFundamentalSpline,
    bernoulli_eval,
    bernoulli_tail_bound,
    fundamental_periodic,
    golomb_cubic,
    periodic_interpolant,
    rho_sigma,
)

D2 = BernoulliKernel(2, 2000)
D4 = BernoulliKernel(4, 2000)


def _d_loop(r, x, n):
    return sum(np.cos(k * x + r * np.pi / 2) / k**r for k in range(1, n + 1))


def test_bernoulli_values():
    assert bernoulli_eval(2, 0.0, 10**6) == pytest.approx(-np.pi**2 / 6, abs=1e-6)
    assert bernoulli_eval(2, np.pi, 10**6) == pytest.approx(np.pi**2 / 12, abs=1e-6)


def test_bernoulli_matches_scalar_loop():
    x = np.array([0.0, 0.4, 2.0, -1.3])
    for r in (2, 3, 4):
        np.testing.assert_allclose(bernoulli_eval(r, x, 300), [_d_loop(r, v, 300) for v in x], atol=1e-13)


def test_bernoulli_tail_bound_dominates_tail():
    for r in (2, 4):
        gap = abs(bernoulli_eval(r, 0.0, 100) - bernoulli_eval(r, 0.0, 20000))
        assert gap <= bernoulli_tail_bound(r, 100)
    assert bernoulli_tail_bound(2, 1000) == pytest.approx(1e-3)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 6), st.floats(-10, 10))
def test_bernoulli_periodic(r, x):
    assert bernoulli_eval(r, x, 200) == pytest.approx(bernoulli_eval(r, x + 2 * np.pi, 200), abs=1e-12)


def test_bernoulli_rejects_bad_order():
    with pytest.raises(ConfigError):
        bernoulli_eval(1, 0.0)
    with pytest.raises(ConfigError):
        BernoulliKernel(0)


def test_rho_sigma_trivial_frequency():
    x = 0.7
    rho, sigma = rho_sigma(D4, 6, 6, x)
    direct = sum(D4(x - 2 * np.pi * nu / 6) for nu in range(1, 7))
    assert rho == pytest.approx(direct, abs=1e-14)
    assert abs(sigma) < 1e-12


def test_rho_sigma_direct_sum():
    rho, sigma = rho_sigma(D2, 4, 1, 0.0)
    n = D2.cutoff
    want_rho = sum(np.cos(np.pi * nu / 2) * _d_loop(2, -np.pi * nu / 2, n) for nu in range(1, 5))
    want_sigma = sum(np.sin(np.pi * nu / 2) * _d_loop(2, -np.pi * nu / 2, n) for nu in range(1, 5))
    assert rho == pytest.approx(want_rho, abs=1e-12)
    assert sigma == pytest.approx(want_sigma, abs=1e-12)


@pytest.mark.parametrize("m", [4, 8, 16])
def test_sigma_cancels_for_even_kernel(m):
    _, sigma = rho_sigma(D4, m, m // 2, 0.0)
    assert abs(sigma) < 1e-12


@pytest.mark.parametrize("m", [4, 8])
@pytest.mark.parametrize("y", [0.0, 0.3])
def test_cardinality_on_shifted_nodes(m, y):
    sp = PeriodicFundamentalSpline(D4, m, y)
    vals = sp(sp.nodes)
    expected = np.zeros(m)
    expected[-1] = 1.0
    np.testing.assert_allclose(vals, expected, atol=1e-10)


def test_golomb_cardinality_and_reduction():
    m = 8
    assert golomb_cubic(m, 0.0, 2000) == pytest.approx(1.0, abs=1e-10)
    assert abs(golomb_cubic(m, 2 * np.pi / m, 2000)) < 1e-10
    knots = 2 * np.pi * np.arange(m) / m
    np.testing.assert_allclose(golomb_cubic(m, knots, 2000), (np.arange(m) == 0) * 1.0, atol=1e-10)
    x = np.linspace(-3, 3, 25)
    np.testing.assert_allclose(golomb_cubic(m, x, 2000), fundamental_periodic(PeriodicFundamentalSpline(D4, m), x), atol=1e-12)
    assert golomb_cubic(m, np.pi / 3, 2000) == pytest.approx(float(PeriodicFundamentalSpline(D4, m)(np.pi / 3)), abs=1e-12)


def test_golomb_is_a_cubic_spline():
    # piecewise cubic: fourth differences vanish inside a knot interval
    m, h = 8, 1e-2
    x = 0.2 + h * np.arange(5)
    vals = golomb_cubic(m, x, 20000)
    assert abs(np.diff(vals, 4)[0]) < 1e-9


@pytest.mark.parametrize("m", [4, 8, 16])
@pytest.mark.parametrize("kernel", [D2, D4], ids=["D2", "D4"])
@pytest.mark.parametrize("y", [0.0, 0.3])
def test_formula_matches_dense_solve(m, kernel, y):
    sp = PeriodicFundamentalSpline(kernel, m, y)
    dense = periodic_dense_fundamental(kernel, m, y)
    x = np.concatenate([np.linspace(0, 2 * np.pi, 37), [np.pi / 8]])
    assert np.abs(sp(x) - dense(x)).max() <= 1e-8


@pytest.mark.parametrize("m", [4, 8, 16])
def test_interpolant_reproduces_samples_and_constants(m):
    sp = PeriodicFundamentalSpline(D4, m, 0.3)
    f = lambda x: np.sin(x) + 0.5 * np.cos(3 * x)
    s = periodic_interpolant(sp, f)
    np.testing.assert_allclose(s(sp.nodes), f(sp.nodes), atol=1e-8)
    one = periodic_interpolant(sp, lambda x: np.ones_like(x))
    np.testing.assert_allclose(one(np.linspace(-4, 4, 33)), 1.0, atol=1e-8)


def test_interpolant_matches_dense_interpolation():
    m, y = 8, 0.3
    sp = PeriodicFundamentalSpline(D4, m, y)
    f = lambda x: np.exp(np.cos(x))
    c0, c, _ = periodic_dense_solve(D4, m, y, f(sp.nodes))
    knots = 2 * np.pi * np.arange(1, m + 1) / m
    x = np.linspace(0, 2 * np.pi, 19)
    dense = c0 + D4(x[:, None] - knots[None, :]) @ c
    np.testing.assert_allclose(periodic_interpolant(sp, f)(x), dense, atol=1e-10)


def test_singular_configuration():
    # a pure first harmonic has no node sums at frequencies j not = +-1 mod m
    kernel = np.cos
    with pytest.raises(SingularSymbolError, match="existence condition"):
        PeriodicFundamentalSpline(kernel, 4)
    with pytest.raises(SolveError):
        periodic_dense_fundamental(kernel, 4, 0.0)


def test_single_node():
    assert np.all(PeriodicFundamentalSpline(D4, 1)(np.linspace(0, 6, 5)) == 1.0)
    with pytest.raises(ConfigError):
        PeriodicFundamentalSpline(D4, 0)
