"""Self-check suites behind ``skdensity validate``.

Each check compares a fast path with an independent reference and records
the measured error next to its tolerance.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import oracle
from .cardinal import (
    GridSamples,
    compute_alpha,
    fundamental_eval_spatial,
    fundamental_eval_spectral,
    interpolate,
    spline_spectrum,
)
from .density import OutputGrid, evaluate_on_uniform_grid_fast, reconstruct_density
from .kernels import GaussianKernel, Symbol
from .levy import GaussianModel
from .mesh import IndexBox, UniformMesh
from .torus import BernoulliKernel, PeriodicFundamentalSpline, golomb_cubic, periodic_interpolant

SUITES = ("cardinal", "torus", "oracle", "density")
_SEED = 20140418


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tolerance)

    def to_dict(self) -> dict:
        return {**asdict(self), "passed": self.passed}


def _reference_spline(a: float = 1.0, b: float = 1.0):
    mesh = UniformMesh([a])
    return compute_alpha(Symbol(mesh, GaussianKernel([b])))


def cardinal_suite() -> list[Check]:
    rng = np.random.default_rng(_SEED)
    spline = _reference_spline()
    m = np.arange(-10, 11)
    vals = fundamental_eval_spatial(spline, m[:, None].astype(float))
    off = np.abs(vals[m != 0]).max()
    x = rng.uniform(0, 1, (100, 1))
    agree = np.abs(fundamental_eval_spectral(spline, x) - fundamental_eval_spatial(spline, x)).max()
    z = rng.uniform(0, 2 * np.pi, 20)
    shifts = 2 * np.pi * np.arange(-8, 9)
    partition = spline_spectrum(spline, (z[:, None] + shifts)[..., None]).sum(axis=1)
    box = IndexBox([5])
    f = GridSamples(spline.mesh, box, rng.normal(size=11))
    g = GridSamples(spline.mesh, box, rng.normal(size=11))
    fg = GridSamples(spline.mesh, box, 2.0 * f.values - 3.0 * g.values)
    pts = rng.uniform(-6, 6, (50, 1))
    lin = np.abs(
        interpolate(spline, fg)(pts) - 2.0 * interpolate(spline, f)(pts) + 3.0 * interpolate(spline, g)(pts)
    ).max()
    return [
        Check("cardinality_origin", abs(vals[m == 0][0] - 1.0), 1e-8),
        Check("cardinality_max_off_origin", off, 1e-8, "max |sk(x_m)| over 1 <= |m| <= 10"),
        Check("spectral_vs_spatial", agree, 1e-6, "100 random points in [0, a]"),
        Check("partition_identity", np.abs(partition - spline.mesh.det).max(), 1e-8),
        Check("interpolation_linearity", lin, 1e-12),
    ]


def torus_suite() -> list[Check]:
    nodes = 2 * np.pi * np.arange(8) / 8
    golomb = np.abs(golomb_cubic(8, nodes) - (np.arange(8) == 0)).max()
    worst = 0.0
    x = np.linspace(0, 2 * np.pi, 41)
    for r in (2, 4):
        kernel = BernoulliKernel(r)
        for m in (4, 8, 16):
            for y in (0.0, 0.3):
                spline = PeriodicFundamentalSpline(kernel, m, y)
                dense = oracle.periodic_dense_fundamental(kernel, m, y)
                worst = max(worst, np.abs(spline(x) - dense(x)).max())
    spline = PeriodicFundamentalSpline(BernoulliKernel(4), 8, 0.3)
    const = np.abs(periodic_interpolant(spline, np.ones_like)(x) - 1.0).max()
    return [
        Check("golomb_cardinality", golomb, 1e-8, "m = 8"),
        Check("formula_vs_dense_solve", worst, 1e-8, "m in {4,8,16}, D_2/D_4, y in {0, 0.3}"),
        Check("constant_reproduction", const, 1e-8),
    ]


def gaussian_symbol_exponents(a: float = 1.0, b: float = 1.0, points: int = 7) -> dict:
    """Compare both closed-form Gaussian symbols with the brute-force periodization."""
    mesh = UniformMesh([a])
    kernel = GaussianKernel([b])
    z = np.linspace(0, 2 * np.pi / a, points)
    truth = np.array([oracle.periodization_bruteforce(kernel, mesh, zi, 20) for zi in z])
    errs = {
        v: float(np.max(np.abs([oracle.gaussian_symbol_closed_form(kernel, mesh, zi, v) for zi in z] - truth)))
        for v in ("poisson", "scaled")
    }
    return {"poisson_exponent_error": errs["poisson"], "scaled_exponent_error": errs["scaled"]}


def oracle_suite() -> list[Check]:
    spline = _reference_spline()
    coef, _ = oracle.dense_fundamental_spline(spline.kernel, spline.mesh, 30)
    s = np.arange(-10, 11)
    target = spline.mesh.det * np.array([spline.coefficient(v) for v in s])
    rel = np.max(np.abs(coef[30 + s] - target) / np.abs(target))
    symbol = spline.symbol
    z = np.linspace(0, 2 * np.pi, 13)
    brute = np.array([oracle.periodization_bruteforce(symbol.kernel, symbol.mesh, zi, 10) for zi in z])
    sym_err = np.abs(symbol(z[:, None]) - brute).max()
    xq = np.arange(-10, 10 + 1e-12, 1e-3)
    f = GaussianKernel([1.0]).spatial(xq[:, None])
    quad = max(
        abs(oracle.fourier_quadrature(f, xq, w) - float(GaussianKernel([1.0]).spectrum([w]))) for w in (0, 1, 2)
    )
    exps = gaussian_symbol_exponents()
    return [
        Check("dense_solve_vs_alpha", rel, 1e-6, "61 nodes, |s| <= 10, elementwise relative"),
        Check("symbol_vs_bruteforce", sym_err, 1e-12),
        Check("fourier_quadrature_vs_spectrum", quad, 1e-8),
        Check("gaussian_symbol_closed_form", exps["poisson_exponent_error"], 1e-10,
              f"scaled exponent error {exps['scaled_exponent_error']:.3g}"),
    ]


def _normal_error(a: float) -> tuple[float, float]:
    mesh = UniformMesh([a])
    symbol = Symbol(mesh, GaussianKernel([1.0]))
    grid = OutputGrid.commensurate(mesh, -5, 5, 1024)
    fast = evaluate_on_uniform_grid_fast(GaussianModel([[1.0]]), mesh, symbol, grid)
    slow = reconstruct_density(GaussianModel([[1.0]]), mesh, symbol, grid)
    x = grid.axes()[0]
    mask = np.abs(x) <= 5
    exact = np.exp(-x**2 / 2) / np.sqrt(2 * np.pi)
    return float(np.abs(fast.values - exact)[mask].max()), float(np.abs(fast.values - slow.values).max())


def density_suite() -> list[Check]:
    errs, agree = zip(*(_normal_error(a) for a in (1.0, 0.5, 0.25)))
    trend = 0.0 if errs[0] > errs[1] > errs[2] else 1.0
    return [
        Check("normal_sup_error_a0.25", errs[2], 1e-3),
        Check("convergence_trend", trend, 0.0, "sup errors " + ", ".join(f"{e:.3g}" for e in errs)),
        Check("fast_vs_slow", max(agree), 1e-10),
    ]


_RUNNERS = {"cardinal": cardinal_suite, "torus": torus_suite, "oracle": oracle_suite, "density": density_suite}


def run(suite: str = "all") -> dict:
    if suite != "all" and suite not in _RUNNERS:
        raise KeyError(suite)
    names = SUITES if suite == "all" else (suite,)
    report = {}
    for name in names:
        checks = _RUNNERS[name]()
        report[name] = [c.to_dict() for c in checks]
    passed = all(c["passed"] for checks in report.values() for c in checks)
    return {"suite": suite, "passed": passed, "results": report}
