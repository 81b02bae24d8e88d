"""Fundamental cardinal sk-splines on a uniform mesh.

With ``1 / S(z) = sum_s alpha_s exp(-i <A s, z>)`` the fundamental spline is

    sk(x) = det(A) sum_s alpha_s K(x - A s)
          = det(A) / (2 pi)^n int F K(z) / S(z) exp(i <z, x>) dz,

and it equals 1 at the origin and 0 at every other mesh point.  The
coefficients come straight from an FFT of sampled ``1 / S``; no linear
system is solved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.signal import convolve

from . import _fft
from .errors import ConfigError, ResolutionError, SingularSymbolError, TruncationError
from .kernels import Kernel, Symbol, symbol_nonvanishing_check
from .mesh import IndexBox, UniformMesh, linf_shells

_CHUNK = 1 << 20
_MAX_SAMPLES = 1 << 16


def _next_pow2(n: int) -> int:
    return 1 << max(0, int(np.ceil(np.log2(max(n, 1)))))


def _centered(coeffs: np.ndarray, box: IndexBox) -> np.ndarray:
    """Pull indices ``-M..M`` out of an FFT-ordered array."""
    idx = np.ix_(*[np.arange(-r, r + 1) % n for r, n in zip(box.radii, coeffs.shape)])
    return coeffs[idx]


def _shell_profile(coeffs: np.ndarray) -> np.ndarray:
    """Max |coefficient| per l-infinity shell, for an FFT-ordered array."""
    shape = coeffs.shape
    half = [n // 2 for n in shape]
    box = IndexBox([h - 1 for h in half])
    vals = np.abs(_centered(coeffs, box)).ravel()
    shells = linf_shells(box)
    prof = np.zeros(min(half))
    np.maximum.at(prof, shells[shells < len(prof)], vals[shells < len(prof)])
    return prof


def _boundary_sum(alpha: np.ndarray, box: IndexBox) -> float:
    idx = box.indices()
    on_face = np.any(np.abs(idx) == np.array(box.radii), axis=1)
    return float(np.abs(alpha.ravel()[on_face]).sum())


@dataclass
class CardinalSpline:
    """Fundamental sk-spline with coefficients ``alpha`` on ``box``."""

    mesh: UniformMesh
    kernel: Kernel
    symbol: Symbol
    alpha: np.ndarray
    box: IndexBox
    sample_counts: tuple[int, ...]
    tail: float
    _nodes: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self._nodes = self.mesh.grid_point(self.box.indices())

    @property
    def scale(self) -> float:
        return self.mesh.det

    def coefficient(self, s) -> float:
        s = tuple(int(v) for v in np.atleast_1d(s))
        if any(abs(v) > r for v, r in zip(s, self.box.radii)):
            return 0.0
        return self.alpha[tuple(v + r for v, r in zip(s, self.box.radii))]

    def __call__(self, x) -> np.ndarray:
        return fundamental_eval_spatial(self, x)

    def truncation(self) -> dict:
        return {
            "coeff_box": list(self.box.radii),
            "sample_counts": list(self.sample_counts),
            "coeff_tail": self.tail,
            "symbol_radius": list(self.symbol.radius.radii),
            "symbol_tail": self.symbol.tail,
        }


def _inverse_symbol_coefficients(symbol: Symbol, counts: Sequence[int]) -> np.ndarray:
    _, values = symbol.cell_samples(counts)
    return _fft.ifftn(1.0 / values)


def compute_alpha(
    symbol: Symbol,
    sample_counts: Sequence[int] | None = None,
    coeff_box: IndexBox | Sequence[int] | int | None = None,
    tail_tol: float = 1e-12,
    floor: float = 1e-12,
) -> CardinalSpline:
    """Fourier coefficients of ``1 / S`` and the resulting fundamental spline.

    Parameters
    ----------
    symbol
        Periodized kernel spectrum; must pass the nonvanishing check at ``floor``.
    sample_counts
        FFT sizes per axis. Defaults to ``4 (M_k + 1)`` rounded up to a power
        of two, doubled while the boundary shell stays above ``tail_tol``.
    coeff_box
        Retained coefficients. When omitted, the smallest box whose boundary
        shell sums below ``tail_tol`` is chosen.
    tail_tol
        Bound on the summed ``|alpha_s|`` over the boundary shell of the box.

    Raises
    ------
    SingularSymbolError
        The symbol nonvanishing check failed.
    ResolutionError
        The tail bound cannot be met with the given sampling or box.
    """
    mesh = symbol.mesh
    n = mesh.dimension
    check = symbol_nonvanishing_check(symbol, 64, floor)
    if not check:
        raise SingularSymbolError(
            f"symbol nonvanishing check failed: min |S| = {check.minimum:.3g} at z = {check.argmin.tolist()}"
            + (" (sign change)" if check.sign_change else "")
        )
    if isinstance(coeff_box, (int, np.integer)):
        coeff_box = IndexBox.uniform(int(coeff_box), n)
    elif coeff_box is not None and not isinstance(coeff_box, IndexBox):
        coeff_box = IndexBox(coeff_box)

    if coeff_box is None:
        counts = list(sample_counts) if sample_counts is not None else [64] * n
        while True:
            coeffs = _inverse_symbol_coefficients(symbol, counts)
            prof = _shell_profile(coeffs)
            # shell r holds at most (2r+1)^n - (2r-1)^n entries
            r = np.arange(len(prof))
            bound = prof * np.maximum((2 * r + 1) ** n - np.maximum(2 * r - 1, 0) ** n, 1)
            ok = np.nonzero(bound < tail_tol)[0]
            ok = ok[ok < min(counts) // 4]
            if ok.size:
                coeff_box = IndexBox.uniform(int(ok[0]), n)
                break
            if sample_counts is not None or max(counts) * 2 > _MAX_SAMPLES:
                raise ResolutionError(
                    f"1/S coefficients do not decay below {tail_tol:g} with sample counts {counts}; "
                    "increase sampling"
                )
            counts = [2 * c for c in counts]
    else:
        if coeff_box.dimension != n:
            raise ConfigError("coefficient box dimension differs from mesh")
        if sample_counts is None:
            counts = [_next_pow2(4 * (r + 1)) for r in coeff_box.radii]
            doublings = 4
        else:
            counts = list(sample_counts)
            doublings = 0
        if any(c < 2 * r + 1 for c, r in zip(counts, coeff_box.radii)):
            raise ConfigError(f"sample counts {counts} must be >= 2M+1 for box {coeff_box.radii}")
        while True:
            coeffs = _inverse_symbol_coefficients(symbol, counts)
            tail = _boundary_sum(_centered(coeffs, coeff_box), coeff_box)
            if tail < tail_tol:
                break
            if doublings == 0 or max(counts) * 2 > _MAX_SAMPLES:
                raise ResolutionError(
                    f"boundary shell of box {coeff_box.radii} sums to {tail:.3g} >= {tail_tol:g} "
                    f"with sample counts {counts}; increase the coefficient box or sampling"
                )
            counts = [2 * c for c in counts]
            doublings -= 1

    alpha = _centered(coeffs, coeff_box)
    if np.abs(alpha.imag).max() <= 1e-10 * max(np.abs(alpha).max(), 1e-300):
        alpha = alpha.real.copy()
    tail = _boundary_sum(alpha, coeff_box)
    return CardinalSpline(mesh, symbol.kernel, symbol, alpha, coeff_box, tuple(counts), tail)


def fundamental_eval_spatial(spline: CardinalSpline, x) -> np.ndarray:
    """``det(A) sum_s alpha_s K(x - A s)`` over the retained box."""
    x = np.asarray(x, dtype=float)
    n = spline.mesh.dimension
    if x.ndim == 0:
        x = x.reshape(1)
    shape = x.shape[:-1]
    flat = x.reshape(-1, n)
    coef = spline.alpha.ravel()
    nodes = spline._nodes
    step = max(1, _CHUNK // len(nodes))
    out = [
        spline.kernel.spatial(flat[i : i + step, None, :] - nodes) @ coef
        for i in range(0, len(flat), step)
    ]
    res = spline.scale * (np.concatenate(out) if out else np.zeros(0, dtype=coef.dtype))
    return np.real_if_close(res.reshape(shape))


def _spectral_radius(spline: CardinalSpline, tol: float) -> float:
    kernel, smin = spline.kernel, spline.symbol.minimum
    z = 1.0
    while kernel.tail_bound(z) / smin >= tol:
        z *= 1.1
        if z > 1e6:
            raise TruncationError("kernel spectrum does not decay; spectral quadrature impossible")
    return z


def fundamental_eval_spectral(
    spline: CardinalSpline,
    x,
    quad_points: Sequence[int] | int | None = None,
    quad_radius: float | None = None,
    tol: float = 1e-15,
) -> np.ndarray:
    """Trapezoidal quadrature of ``det(A)/(2 pi)^n int F K / S exp(i <z, x>) dz``.

    The domain is the cube ``|z_k| <= quad_radius``; by default the radius is
    chosen so that ``tail_bound(R) / min S < tol``.  The default step is
    1/64 of the dual period on each axis.
    """
    n = spline.mesh.dimension
    if quad_radius is None:
        quad_radius = _spectral_radius(spline, tol)
    elif spline.kernel.tail_bound(quad_radius) / spline.symbol.minimum >= tol:
        raise TruncationError(
            f"quadrature radius {quad_radius:g} leaves integrand tail "
            f"{spline.kernel.tail_bound(quad_radius) / spline.symbol.minimum:.3g} >= {tol:g}"
        )
    if quad_points is None:
        h = spline.mesh.dual_periods / 64.0
        quad_points = [2 * int(np.ceil(quad_radius / hk)) + 1 for hk in h]
    elif isinstance(quad_points, (int, np.integer)):
        quad_points = [int(quad_points)] * n
    axes = [np.linspace(-quad_radius, quad_radius, q) for q in quad_points]
    weights = []
    for ax in axes:
        w = np.full(ax.size, ax[1] - ax[0])
        w[[0, -1]] *= 0.5
        weights.append(w)
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    w = np.ones(1)
    for wk in weights:
        w = np.multiply.outer(w, wk)
    integrand = w.ravel() * spline.symbol.ratio(grid)

    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    shape = x.shape[:-1]
    flat = x.reshape(-1, n)
    step = max(1, _CHUNK // len(grid))
    out = [
        np.exp(1j * flat[i : i + step] @ grid.T) @ integrand for i in range(0, len(flat), step)
    ]
    res = np.concatenate(out).real if out else np.zeros(0)
    return (spline.scale / (2 * np.pi) ** n * res).reshape(shape)


def spline_spectrum(spline: CardinalSpline, z) -> np.ndarray:
    """``F sk(z) = det(A) F K(z) / S(z)``."""
    return spline.scale * spline.symbol.ratio(z)


@dataclass(frozen=True)
class GridSamples:
    """Function values ``f(x_m)`` on every index of ``box``, stored as an array of ``box.shape``."""

    mesh: UniformMesh
    box: IndexBox
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.shape != self.box.shape:
            raise ConfigError(f"samples have shape {vals.shape}, box needs {self.box.shape}")
        if not np.all(np.isfinite(vals)):
            raise ConfigError("samples must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, mesh: UniformMesh, box: IndexBox, f: Callable) -> "GridSamples":
        pts = mesh.grid_point(box.indices())
        return cls(mesh, box, np.asarray(f(pts)).reshape(box.shape))


class Interpolant:
    """``x -> sum_m f(x_m) sk(x - x_m)`` for a fixed set of samples.

    The double sum is folded into a single kernel expansion by convolving
    the samples with ``alpha``.
    """

    def __init__(self, spline: CardinalSpline, samples: GridSamples):
        if samples.mesh != spline.mesh:
            raise ConfigError("samples and spline live on different meshes")
        self.spline = spline
        self.samples = samples
        self.coefficients = spline.scale * convolve(samples.values, spline.alpha, method="direct")
        self.box = IndexBox([r + s for r, s in zip(samples.box.radii, spline.box.radii)])
        self._nodes = spline.mesh.grid_point(self.box.indices())

    def __call__(self, x) -> np.ndarray:
        n = self.spline.mesh.dimension
        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            x = x.reshape(1)
        shape = x.shape[:-1]
        flat = x.reshape(-1, n)
        coef = self.coefficients.ravel()
        step = max(1, _CHUNK // len(self._nodes))
        out = [
            self.spline.kernel.spatial(flat[i : i + step, None, :] - self._nodes) @ coef
            for i in range(0, len(flat), step)
        ]
        return np.real_if_close(np.concatenate(out).reshape(shape))

    def trust_region(self, tol: float = 1e-12) -> IndexBox:
        """Sub-box of the sample box whose nodes are reproduced to about ``tol``."""
        margin = coefficient_decay_report(self.spline).margin(tol)
        return IndexBox([max(r - margin, 0) for r in self.samples.box.radii])


def interpolate(spline: CardinalSpline, samples: GridSamples) -> Interpolant:
    return Interpolant(spline, samples)


@dataclass(frozen=True)
class DecayReport:
    shell_max: np.ndarray
    slope: float

    @property
    def decay_length(self) -> float:
        """Index distance over which ``|alpha|`` drops by a factor e."""
        return -1.0 / self.slope if self.slope < 0 else (0.0 if self.slope == -np.inf else np.inf)

    def margin(self, tol: float) -> int:
        if not np.isfinite(self.slope):
            return 0
        if self.slope >= 0:
            return len(self.shell_max)
        return int(np.ceil(np.log(tol) / self.slope))


def coefficient_decay_report(spline: CardinalSpline, noise: float = 1e-14) -> DecayReport:
    """Max ``|alpha_s|`` per l-infinity shell and a log-linear slope fit.

    Shells below ``noise`` times the shell-0 value are treated as FFT
    round-off and excluded from the fit.
    """
    shells = linf_shells(spline.box)
    vals = np.abs(spline.alpha).ravel()
    prof = np.zeros(max(spline.box.radii) + 1)
    np.maximum.at(prof, shells, vals)
    usable = np.nonzero(prof > noise * prof[0])[0]
    if usable.size < 2:
        return DecayReport(prof, -np.inf)
    slope = float(np.polyfit(usable, np.log(prof[usable]), 1)[0])
    return DecayReport(prof, slope)
