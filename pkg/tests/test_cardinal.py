import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skdensity import (
    ConfigError,
    GaussianKernel,
    GridSamples,
    IndexBox,
    ResolutionError,
    SingularSymbolError,
    Symbol,
    UniformMesh,
    coefficient_decay_report,
    compute_alpha,
    fundamental_eval_spatial,
    fundamental_eval_spectral,
    interpolate,
    spline_spectrum,
)
from skdensity.kernels import CosineGaussianKernel
from skdensity.oracle import dense_fundamental_spline, dense_interpolant


class ConstantSymbol(Symbol):
    """S(z) = c on the whole cell."""

    def __init__(self, mesh, c):
        self.mesh, self.kernel, self.c = mesh, GaussianKernel([1.0] * mesh.dimension), c
        self.radius, self.tail, self.minimum = IndexBox([0] * mesh.dimension), 0.0, c

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        return np.full(z.shape[:-1], self.c)


@pytest.fixture(scope="module")
def unit_spline():
    return compute_alpha(Symbol(UniformMesh([1.0]), GaussianKernel([1.0])))


def _inverse_symbol_mean(a, b, points=4096):
    # trapezoid (= rectangle, periodic) rule for the cell average of 1/S
    z = 2 * np.pi / a * np.arange(points) / points
    m = np.arange(-12, 13)
    s = np.sqrt(np.pi / b) * np.exp(-((z[:, None] + 2 * np.pi * m / a) ** 2) / (4 * b))
    return np.mean(1.0 / s.sum(axis=1))


def test_constant_symbol():
    sp = compute_alpha(ConstantSymbol(UniformMesh([1.0]), 4.0), coeff_box=3)
    assert sp.coefficient(0) == pytest.approx(0.25, rel=1e-14)
    others = [sp.coefficient(s) for s in (-3, -2, -1, 1, 2, 3)]
    assert np.max(np.abs(others)) < 1e-15


def test_coarse_mesh_symbol_is_nearly_constant():
    # wide spacing: S(z) ~ a, so alpha_0 ~ 1/a and the kernel is already cardinal
    sp = compute_alpha(Symbol(UniformMesh([10.0]), GaussianKernel([1.0])))
    assert sp.coefficient(0) == pytest.approx(0.1, rel=1e-12)
    off = np.abs(sp.alpha.copy())
    off[sp.box.radii[0]] = 0
    assert off.max() < 1e-12
    np.testing.assert_allclose(sp([[0.7], [2.0]]), GaussianKernel([1.0]).spatial([[0.7], [2.0]]), atol=1e-12)


def test_fine_mesh_symbol_too_small_for_coefficients():
    # S dips to ~1e-107 mid-cell at a = 0.1, b = 1
    with pytest.raises(SingularSymbolError, match="symbol nonvanishing check failed"):
        compute_alpha(Symbol(UniformMesh([0.1]), GaussianKernel([1.0])))


def test_singular_symbol_raises():
    with pytest.raises(SingularSymbolError):
        compute_alpha(Symbol(UniformMesh([1.0]), CosineGaussianKernel([1.0])))


def test_alpha_zero_is_cell_mean(unit_spline):
    assert unit_spline.coefficient(0) == pytest.approx(_inverse_symbol_mean(1.0, 1.0), rel=1e-13)


def test_alpha_symmetric_and_decaying(unit_spline):
    a = unit_spline.alpha
    np.testing.assert_allclose(a, a[::-1], rtol=0, atol=1e-16)
    rep = coefficient_decay_report(unit_spline)
    assert rep.slope < 0
    assert np.all(np.diff(rep.shell_max[:25]) < 0)


def test_cardinality_unit_mesh(unit_spline):
    m = np.arange(-10, 11)
    vals = unit_spline(m[:, None].astype(float))
    np.testing.assert_allclose(vals, (m == 0).astype(float), atol=1e-8)


def test_cardinality_2d():
    mesh = UniformMesh([1.0, 0.8])
    sp = compute_alpha(Symbol(mesh, GaussianKernel([1.0, 1.5])))
    idx = IndexBox([4, 4]).indices()
    vals = sp(mesh.grid_point(idx))
    expected = np.all(idx == 0, axis=1).astype(float)
    np.testing.assert_allclose(vals, expected, atol=1e-8)


def test_spatial_matches_dense_solve(unit_spline):
    _, dense = dense_fundamental_spline(unit_spline.kernel, unit_spline.mesh, 30)
    for x in (0.5, 0.25, 1.7, -3.3):
        assert abs(unit_spline([x]) - dense([x])[0]) <= 1e-6


def test_spectral_cardinality(unit_spline):
    assert abs(fundamental_eval_spectral(unit_spline, [0.0]) - 1) <= 1e-6
    assert abs(fundamental_eval_spectral(unit_spline, [1.0])) <= 1e-6
    assert abs(fundamental_eval_spectral(unit_spline, [0.5]) - unit_spline([0.5])) <= 1e-6


def test_spectral_radius_too_small(unit_spline):
    from skdensity import TruncationError

    with pytest.raises(TruncationError):
        fundamental_eval_spectral(unit_spline, [0.0], quad_radius=3.0)


def test_partition_identity(unit_spline):
    rng = np.random.default_rng(3)
    z = rng.uniform(0, 2 * np.pi, 20)
    pts = (z[:, None] + 2 * np.pi * np.arange(-8, 9))[..., None]
    total = spline_spectrum(unit_spline, pts).sum(axis=1)
    np.testing.assert_allclose(total, 1.0, atol=1e-8)


def test_interpolate_zero_and_delta(unit_spline):
    box = IndexBox([6])
    zero = interpolate(unit_spline, GridSamples(unit_spline.mesh, box, np.zeros(13)))
    x = np.linspace(-5, 5, 31)[:, None]
    assert np.all(zero(x) == 0)
    delta = interpolate(unit_spline, GridSamples(unit_spline.mesh, box, (np.arange(-6, 7) == 0) * 1.0))
    np.testing.assert_allclose(delta(x), unit_spline(x), rtol=0, atol=1e-15)


def test_interpolate_matches_dense_solve():
    mesh = UniformMesh([0.5])
    sp = compute_alpha(Symbol(mesh, GaussianKernel([1.0])))
    box = IndexBox([20])
    f = lambda x: np.exp(-x[..., 0] ** 2)
    samples = GridSamples.from_function(mesh, box, f)
    nodes = mesh.grid_point(box.indices())
    dense = dense_interpolant(sp.kernel, nodes, f(nodes))
    s = interpolate(sp, samples)
    for x in (0.25, 1.1, -2.6):
        assert abs(s([x]) - dense([x])[0]) <= 1e-6


def test_interpolant_reproduces_interior_nodes(unit_spline):
    box = IndexBox([40])
    samples = GridSamples.from_function(unit_spline.mesh, box, lambda x: np.cos(x[..., 0]))
    s = interpolate(unit_spline, samples)
    inner = s.trust_region(1e-10)
    assert 0 < inner.radii[0] < 40
    nodes = unit_spline.mesh.grid_point(inner.indices())
    np.testing.assert_allclose(s(nodes), np.cos(nodes[:, 0]), atol=1e-9)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.floats(-5, 5), min_size=9, max_size=9),
    st.lists(st.floats(-5, 5), min_size=9, max_size=9),
    st.floats(-3, 3),
    st.floats(-3, 3),
)
def test_interpolation_is_linear(f, g, alpha, beta):
    sp = _module_spline()
    box = IndexBox([4])
    f, g = np.array(f), np.array(g)
    x = np.linspace(-4, 4, 17)[:, None]
    lhs = interpolate(sp, GridSamples(sp.mesh, box, alpha * f + beta * g))(x)
    rhs = alpha * interpolate(sp, GridSamples(sp.mesh, box, f))(x) + beta * interpolate(sp, GridSamples(sp.mesh, box, g))(x)
    assert np.abs(lhs - rhs).max() <= 1e-12 * (1 + np.abs(f).max() + np.abs(g).max()) * 10


_CACHE = {}


def _module_spline():
    if "s" not in _CACHE:
        _CACHE["s"] = compute_alpha(Symbol(UniformMesh([1.0]), GaussianKernel([1.0])))
    return _CACHE["s"]


def test_box_too_small_is_resolution_error():
    with pytest.raises(ResolutionError):
        compute_alpha(Symbol(UniformMesh([1.0]), GaussianKernel([1.0])), coeff_box=5)


def test_sample_counts_below_box_width():
    with pytest.raises(ConfigError):
        compute_alpha(Symbol(UniformMesh([1.0]), GaussianKernel([1.0])), sample_counts=[32], coeff_box=20)


def test_explicit_box_refines_sampling():
    sp = compute_alpha(Symbol(UniformMesh([1.0]), GaussianKernel([1.0])), coeff_box=35)
    assert sp.sample_counts[0] >= 2 * 35 + 1
    assert sp.tail < 1e-12


def test_decay_report_constant_symbol():
    sp = compute_alpha(ConstantSymbol(UniformMesh([1.0]), 2.0), coeff_box=4)
    rep = coefficient_decay_report(sp)
    assert rep.shell_max[0] == pytest.approx(0.5)
    assert rep.shell_max[1:].max() < 1e-15


def test_decay_report_coarse_mesh_dominated_by_centre():
    sp = compute_alpha(Symbol(UniformMesh([10.0]), GaussianKernel([1.0])), coeff_box=3)
    rep = coefficient_decay_report(sp)
    assert rep.shell_max[0] >= 1e10 * rep.shell_max[1:].max()


def test_decay_rate_unit_mesh(unit_spline):
    # nearest complex zero of S sits at Im z = 1 for a = b = 1: alpha_s ~ exp(-|s|)
    assert coefficient_decay_report(unit_spline).slope == pytest.approx(-1.0, abs=0.02)
