"""Density reconstruction from samples of a characteristic function.

On the mesh ``A Z^n`` the approximant is

    p(xi) = det(A) / (2 pi)^n * F K(xi) / S(xi) * sum_m Phi(x_m, t) exp(-i <xi, x_m>),

the Fourier transform of the sk-spline interpolant of ``Phi``.  The sum is
truncated to a box outside which ``|Phi|`` is below tolerance.  The slow path
evaluates it point by point; the fast path uses one zero-padded FFT on a
commensurate grid (``step_k * a_k = 2 pi / N_k``).
"""

from __future__ import annotations

import io
import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _fft
from .cardinal import CardinalSpline
from .errors import (
    CommensurabilityError,
    ConfigError,
    ImaginaryResidueError,
    NonDecayingError,
    SingularSymbolError,
)
from .kernels import Symbol, symbol_nonvanishing_check
from .levy import LevyModel
from .mesh import IndexBox, UniformMesh

_CHUNK = 1 << 22
_SCAN_CAP = 1_000_000


@dataclass(frozen=True)
class OutputGrid:
    """Tensor grid ``offset_k + step_k * j`` for ``j = 0..count_k - 1``."""

    offset: tuple[float, ...]
    step: tuple[float, ...]
    count: tuple[int, ...]

    def __init__(self, offset, step, count):
        offset = tuple(float(v) for v in np.atleast_1d(offset))
        step = tuple(float(v) for v in np.atleast_1d(step))
        count = tuple(int(v) for v in np.atleast_1d(count))
        if not (len(offset) == len(step) == len(count)):
            raise ConfigError("offset, step and count must have equal length")
        if any(s <= 0 for s in step) or any(c < 1 for c in count):
            raise ConfigError("grid steps must be positive and counts >= 1")
        object.__setattr__(self, "offset", offset)
        object.__setattr__(self, "step", step)
        object.__setattr__(self, "count", count)

    @classmethod
    def commensurate(cls, mesh: UniformMesh, lower, upper, fft_size: Sequence[int] | int = 1024) -> "OutputGrid":
        """Fast-path grid covering ``[lower, upper]`` with ``step_k = 2 pi / (N_k a_k)``.

        The offset is snapped to a multiple of the step so that 0 is a node.
        """
        n = mesh.dimension
        lower = np.broadcast_to(np.asarray(lower, dtype=float), (n,))
        upper = np.broadcast_to(np.asarray(upper, dtype=float), (n,))
        sizes = np.broadcast_to(np.asarray(fft_size, dtype=int), (n,))
        step = 2 * np.pi / (sizes * mesh.a)
        offset = np.floor(lower / step + 1e-9) * step
        count = np.ceil((upper - offset) / step - 1e-9).astype(int) + 1
        return cls(offset, step, count)

    @property
    def dimension(self) -> int:
        return len(self.step)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.count

    def axes(self) -> list[np.ndarray]:
        return [o + s * np.arange(c) for o, s, c in zip(self.offset, self.step, self.count)]

    def points(self) -> np.ndarray:
        """All grid points, shape (*count, n), lexicographic (last axis fastest)."""
        return np.stack(np.meshgrid(*self.axes(), indexing="ij"), axis=-1)

    def to_dict(self) -> dict:
        return {"offset": list(self.offset), "step": list(self.step), "count": list(self.count)}


@dataclass
class DensityApproximation:
    grid: OutputGrid | None
    points: np.ndarray
    values: np.ndarray
    max_imag: float
    box: IndexBox
    mesh: UniformMesh
    runtime_ms: float = 0.0
    clamped: bool = False
    spectral_factor: np.ndarray | None = field(default=None, repr=False)

    @property
    def min_value(self) -> float:
        return float(self.values.min())

    def mass(self) -> float:
        return integrate(self, np.ones_like(self.values))

    def clamp_negative(self) -> "DensityApproximation":
        vals = np.maximum(self.values, 0.0)
        return DensityApproximation(
            self.grid, self.points, vals, self.max_imag, self.box, self.mesh, self.runtime_ms, True, self.spectral_factor
        )

    def diagnostics(self) -> dict:
        return {
            "max_imag": self.max_imag,
            "min_value": self.min_value,
            "box": list(self.box.radii),
            "mesh": list(self.mesh.spacings),
            "runtime_ms": self.runtime_ms,
        }

    def csv_text(self) -> str:
        n = self.mesh.dimension
        buf = io.StringIO()
        buf.write(",".join([f"x{k + 1}" for k in range(n)] + ["density"]) + "\n")
        pts = self.points.reshape(-1, n)
        vals = self.values.ravel()
        for p, v in zip(pts, vals):
            buf.write(",".join(f"{c:.17g}" for c in p) + f",{v:.17g}\n")
        return buf.getvalue()


def integrate(density: DensityApproximation, integrand: np.ndarray) -> float:
    """Tensor trapezoid of ``integrand * p`` over the density grid (pairwise summation)."""
    if density.grid is None:
        raise ConfigError("integration needs a tensor output grid")
    vals = np.asarray(integrand, dtype=float) * density.values
    for axis, h in enumerate(density.grid.step):
        w = np.full(vals.shape[axis], h)
        if w.size > 1:
            w[[0, -1]] *= 0.5
        shape = [1] * vals.ndim
        shape[axis] = -1
        vals = vals * w.reshape(shape)
    return float(np.sum(vals))


def select_truncation(model: LevyModel, mesh: UniformMesh, tol: float = 1e-12, cap: int = _SCAN_CAP) -> IndexBox:
    """Smallest box with ``|Phi(x_m, t)| <= tol`` on its boundary shell.

    Each axis is scanned outward; a later excursion above ``tol`` (within a
    window of twice the candidate radius) pushes the radius past it.
    """
    if mesh.dimension != model.dimension:
        raise ConfigError("mesh and model dimensions differ")
    n = mesh.dimension
    radii = []
    for k in range(n):
        e = np.zeros(n)
        e[k] = mesh.spacings[k]
        found = None
        hi = 1024
        while found is None:
            m = np.arange(0, min(hi, cap) + 1)
            mag = np.maximum(
                np.abs(model.characteristic_function(np.outer(m, e))),
                np.abs(model.characteristic_function(np.outer(-m, e))),
            )
            above = np.nonzero(mag > tol)[0]
            last = -1 if above.size == 0 else int(above[-1])
            candidate = last + 1
            if candidate <= m[-1] and 2 * candidate + 16 <= m[-1]:
                found = candidate
            elif hi >= cap:
                raise NonDecayingError(
                    f"|Phi| stays above {tol:g} along axis {k + 1} up to index {cap}"
                )
            else:
                hi *= 4
        radii.append(found)
    box = IndexBox(radii)
    while True:
        shell = box.shell()
        mag = np.abs(model.characteristic_function(mesh.grid_point(shell)))
        if mag.max() <= tol:
            return box
        if max(box.radii) >= cap:
            raise NonDecayingError(f"|Phi| above {tol:g} on the boundary of every box up to {cap}")
        box = box.grow(1)


def _symbol_of(spectral) -> Symbol:
    if isinstance(spectral, CardinalSpline):
        return spectral.symbol
    if isinstance(spectral, Symbol):
        return spectral
    raise ConfigError("expected a CardinalSpline or Symbol")


def _checked_symbol(spectral, mesh: UniformMesh, floor: float) -> Symbol:
    symbol = _symbol_of(spectral)
    if symbol.mesh != mesh:
        raise ConfigError("spline/symbol was built on a different mesh")
    report = symbol_nonvanishing_check(symbol, 64, floor)
    if not report:
        raise SingularSymbolError(
            f"symbol nonvanishing check failed: min |S| = {report.minimum:.3g} at z = {report.argmin.tolist()}"
            + (" (sign change)" if report.sign_change else "")
        )
    return symbol


def _finish(grid, points, raw, factor, box, mesh, imag_tol, t0) -> DensityApproximation:
    values = factor * raw
    max_imag = float(np.abs(values.imag).max()) if values.size else 0.0
    if max_imag > imag_tol:
        raise ImaginaryResidueError(
            f"imaginary residue {max_imag:.3g} exceeds {imag_tol:g}; model and mesh are inconsistent"
        )
    return DensityApproximation(
        grid, points, values.real.copy(), max_imag, box, mesh, (time.perf_counter() - t0) * 1e3, False, factor
    )


def reconstruct_density(
    model: LevyModel,
    mesh: UniformMesh,
    spectral: CardinalSpline | Symbol,
    out_grid: OutputGrid | np.ndarray,
    box: IndexBox | None = None,
    phi_tol: float = 1e-12,
    imag_tol: float = 1e-10,
    floor: float = 0.0,
) -> DensityApproximation:
    """Direct evaluation of the density approximant at every output point.

    ``out_grid`` is an :class:`OutputGrid` or an array of points of shape
    (..., n).  ``box`` defaults to :func:`select_truncation` at ``phi_tol``.
    Only the symbol of ``spectral`` is used, so a bare :class:`Symbol` works
    on meshes too fine for the coefficients of ``1/S`` to be computed.
    """
    t0 = time.perf_counter()
    symbol = _checked_symbol(spectral, mesh, floor)
    n = mesh.dimension
    if box is None:
        box = select_truncation(model, mesh, phi_tol)
    if isinstance(out_grid, OutputGrid):
        grid, points = out_grid, out_grid.points()
    else:
        grid, points = None, np.asarray(out_grid, dtype=float)
        if points.ndim == 1 and n == 1:
            points = points[:, None]
    nodes = mesh.grid_point(box.indices())
    phi = model.characteristic_function(nodes)
    flat = points.reshape(-1, n)
    step = max(1, _CHUNK // len(nodes))
    sums = np.concatenate(
        [np.exp(-1j * (flat[i : i + step] @ nodes.T)) @ phi for i in range(0, len(flat), step)]
    )
    factor = mesh.det / (2 * np.pi) ** n * symbol.ratio(flat)
    vals_shape = points.shape[:-1]
    res = _finish(grid, points, sums.reshape(vals_shape), factor.reshape(vals_shape), box, mesh, imag_tol, t0)
    return res


def fft_sizes(mesh: UniformMesh, grid: OutputGrid, rtol: float = 1e-9) -> tuple[int, ...]:
    """``N_k = 2 pi / (step_k a_k)``; raises if any ratio is not an integer."""
    sizes = []
    for k, (h, a) in enumerate(zip(grid.step, mesh.spacings)):
        ratio = 2 * np.pi / (h * a)
        nearest = max(int(round(ratio)), 1)
        if abs(ratio - nearest) > rtol * nearest:
            raise CommensurabilityError(
                f"axis {k + 1}: step {h:.17g} gives step*a = 2pi/{ratio:.6f}; "
                f"nearest valid step is {2 * np.pi / (nearest * a):.17g} (N = {nearest})"
            )
        sizes.append(nearest)
    return tuple(sizes)


def evaluate_on_uniform_grid_fast(
    model: LevyModel,
    mesh: UniformMesh,
    spectral: CardinalSpline | Symbol,
    out_grid: OutputGrid,
    box: IndexBox | None = None,
    phi_tol: float = 1e-12,
    imag_tol: float = 1e-10,
    floor: float = 0.0,
) -> DensityApproximation:
    """Same approximant as :func:`reconstruct_density`, via one n-dimensional FFT.

    Samples are folded modulo ``N_k`` before the transform, which is exact
    for any box size because ``exp(-2 pi i j m / N)`` is ``N``-periodic in ``m``.
    Output indices beyond ``N_k`` wrap around (the approximant is periodic).
    """
    t0 = time.perf_counter()
    symbol = _checked_symbol(spectral, mesh, floor)
    n = mesh.dimension
    if out_grid.dimension != n:
        raise ConfigError("output grid dimension differs from mesh")
    sizes = fft_sizes(mesh, out_grid)
    if box is None:
        box = select_truncation(model, mesh, phi_tol)
    idx = box.indices()
    nodes = mesh.grid_point(idx)
    coeff = model.characteristic_function(nodes) * np.exp(-1j * (nodes @ np.array(out_grid.offset)))
    buf = np.zeros(sizes, dtype=complex)
    np.add.at(buf, tuple((idx % np.array(sizes)).T), coeff)
    transformed = _fft.fftn(buf)
    take = np.ix_(*[np.arange(c) % N for c, N in zip(out_grid.count, sizes)])
    sums = transformed[take]
    points = out_grid.points()
    factor = mesh.det / (2 * np.pi) ** n * symbol.ratio(points)
    return _finish(out_grid, points, sums, factor, box, mesh, imag_tol, t0)
