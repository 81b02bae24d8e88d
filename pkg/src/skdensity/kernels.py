"""Kernels with paired spatial/spectral evaluation, and the periodized symbol.

Fourier transforms use the convention

    F f(y) = int exp(-i <x, y>) f(x) dx,      F^{-1} g(x) = (2 pi)^{-n} F g(-x).

Conversion to the ``exp(+i <x, y>)`` convention: replace ``y`` by ``-y``;
for the even kernels shipped here both conventions coincide.

The symbol of a kernel ``K`` on the mesh ``A Z^n`` is the periodization

    S(z) = sum_m F K(z + 2 pi A^{-1} m),

which is ``2 pi / a_k`` periodic in each coordinate.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import ConfigError, TruncationError
from .mesh import IndexBox, UniformMesh

_CHUNK = 1 << 20


def _points(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    if x.shape[-1] != n:
        raise ConfigError(f"point has trailing dimension {x.shape[-1]}, kernel dimension is {n}")
    return x


class Kernel(abc.ABC):
    """Base class for kernels.

    Subclasses provide ``spatial`` (``K(x)``), ``spectrum`` (``F K(z)``) and
    ``tail_bound(r)``, an upper bound for ``|F K(z)|`` over ``|z| >= r``.
    Points are arrays whose last axis has length ``dimension``.
    """

    dimension: int

    @abc.abstractmethod
    def spatial(self, x) -> np.ndarray: ...

    @abc.abstractmethod
    def spectrum(self, z) -> np.ndarray: ...

    @abc.abstractmethod
    def tail_bound(self, r: float) -> float: ...

    def log_spectrum(self, z) -> np.ndarray | None:
        """Natural log of a strictly positive spectrum, or ``None`` if unavailable."""
        return None

    @abc.abstractmethod
    def to_dict(self) -> dict: ...


@dataclass(frozen=True, init=False)
class GaussianKernel(Kernel):
    """``K(x) = exp(-sum_k b_k x_k^2)``."""

    b: tuple[float, ...]

    def __init__(self, b: Sequence[float] | float):
        arr = np.atleast_1d(np.asarray(b, dtype=float))
        if arr.ndim != 1 or arr.size == 0 or np.any(~np.isfinite(arr)) or np.any(arr <= 0):
            raise ConfigError(f"Gaussian shape parameters must be positive, got {b!r}")
        object.__setattr__(self, "b", tuple(float(v) for v in arr))

    @property
    def dimension(self) -> int:
        return len(self.b)

    @property
    def _b(self) -> np.ndarray:
        return np.array(self.b)

    @property
    def spectral_peak(self) -> float:
        """``F K(0) = pi^{n/2} det(B)^{-1/2}``."""
        return float(np.pi ** (self.dimension / 2) / np.sqrt(np.prod(self._b)))

    def spatial(self, x) -> np.ndarray:
        x = _points(x, self.dimension)
        return np.exp(-np.sum(self._b * x**2, axis=-1))

    def log_spectrum(self, z) -> np.ndarray:
        z = _points(z, self.dimension)
        return np.log(self.spectral_peak) - np.sum(z**2 / (4.0 * self._b), axis=-1)

    def spectrum(self, z) -> np.ndarray:
        return np.exp(self.log_spectrum(z))

    def tail_bound(self, r: float) -> float:
        return self.spectral_peak * float(np.exp(-(r**2) / (4.0 * max(self.b))))

    def to_dict(self) -> dict:
        return {"type": "gaussian", "b": list(self.b)}


@dataclass(frozen=True, init=False)
class CosineGaussianKernel(Kernel):
    """Gaussian modulated in frequency: ``F K(z) = prod_k cos(c z_k) * F G(z)``.

    In space this is ``prod_k (g_k(x_k - c) + g_k(x_k + c)) / 2``.  The
    spectrum changes sign, so on coarse meshes the symbol has zeros; used to
    exercise the singular-symbol paths.
    """

    b: tuple[float, ...]
    shift: float = 1.0

    def __init__(self, b: Sequence[float] | float, shift: float = 1.0):
        object.__setattr__(self, "b", GaussianKernel(b).b)
        object.__setattr__(self, "shift", float(shift))

    @property
    def dimension(self) -> int:
        return len(self.b)

    def spatial(self, x) -> np.ndarray:
        x = _points(x, self.dimension)
        b, c = np.array(self.b), self.shift
        return np.prod(0.5 * (np.exp(-b * (x - c) ** 2) + np.exp(-b * (x + c) ** 2)), axis=-1)

    def spectrum(self, z) -> np.ndarray:
        z = _points(z, self.dimension)
        return np.prod(np.cos(self.shift * z), axis=-1) * GaussianKernel(self.b).spectrum(z)

    def tail_bound(self, r: float) -> float:
        return GaussianKernel(self.b).tail_bound(r)

    def to_dict(self) -> dict:
        return {"type": "cosine_gaussian", "b": list(self.b), "shift": self.shift}


def kernel_from_dict(desc: dict) -> Kernel:
    kind = desc.get("type")
    if kind == "gaussian":
        return GaussianKernel(desc["b"])
    if kind == "cosine_gaussian":
        return CosineGaussianKernel(desc["b"], desc.get("shift", 1.0))
    raise ConfigError(f"unknown kernel type {kind!r}")


def periodization_tail(kernel: Kernel, mesh: UniformMesh, radius: int) -> float:
    """Bound on the omitted part of the symbol sum for a uniform index radius.

    Assumes ``z`` has been reduced to the centred cell, so every index on the
    l-infinity shell ``r`` sits at distance at least ``(2r - 1) pi / max(a)``.
    """
    n = mesh.dimension
    amax = max(mesh.spacings)
    total = 0.0
    r = radius + 1
    while True:
        count = (2 * r + 1) ** n - (2 * r - 1) ** n
        term = count * kernel.tail_bound((2 * r - 1) * np.pi / amax)
        total += term
        if term <= 1e-300 or term < 1e-6 * total or r > radius + 10_000:
            return total
        r += 1


def default_symbol_radius(kernel: Kernel, mesh: UniformMesh, tol: float = 1e-14, cap: int = 1000) -> int:
    """Smallest uniform radius whose periodization tail is below ``tol``."""
    for r in range(cap + 1):
        if periodization_tail(kernel, mesh, r) < tol:
            return r
    raise TruncationError(f"no symbol radius <= {cap} reaches tail tolerance {tol:g}")


@dataclass(frozen=True)
class NonvanishingReport:
    ok: bool
    minimum: float
    argmin: np.ndarray
    sign_change: bool

    def __bool__(self) -> bool:
        return self.ok


class Symbol:
    """Truncated periodization ``S(z)`` of a kernel spectrum over the dual lattice.

    Parameters
    ----------
    mesh, kernel
        Must have equal dimension.
    radius
        Periodization box. Defaults to the smallest uniform box whose tail
        bound is below ``tol``; an explicit box whose bound exceeds ``tol``
        raises :class:`TruncationError`.
    samples_per_axis
        Resolution of the dense dual-cell sample used to cache the minimum.

    Notes
    -----
    Arguments are reduced into the centred cell before summation, so
    ``S`` is exactly periodic and the truncation error is uniform in ``z``.
    """

    def __init__(
        self,
        mesh: UniformMesh,
        kernel: Kernel,
        radius: IndexBox | int | None = None,
        tol: float = 1e-14,
        samples_per_axis: int = 64,
    ):
        if mesh.dimension != kernel.dimension:
            raise ConfigError("mesh and kernel dimensions differ")
        self.mesh = mesh
        self.kernel = kernel
        self.tol = tol
        if radius is None:
            radius = IndexBox.uniform(default_symbol_radius(kernel, mesh, tol), mesh.dimension)
        elif isinstance(radius, (int, np.integer)):
            radius = IndexBox.uniform(int(radius), mesh.dimension)
        self.radius = radius
        self._log_ok = kernel.log_spectrum(np.zeros(mesh.dimension)) is not None
        self.tail = periodization_tail(kernel, mesh, min(radius.radii))
        if self.tail >= tol:
            raise TruncationError(
                f"periodization radius {radius.radii} leaves tail {self.tail:.3g} >= {tol:g}"
            )
        self._shifts = mesh.dual_point(radius.indices())
        report = symbol_nonvanishing_check(self, samples_per_axis, floor=0.0)
        self.minimum = report.minimum
        self.argmin = report.argmin
        self.sign_change = report.sign_change

    def _chunks(self, z: np.ndarray):
        step = max(1, _CHUNK // len(self._shifts))
        for start in range(0, len(z), step):
            yield z[start : start + step]

    def __call__(self, z) -> np.ndarray:
        z = _points(z, self.mesh.dimension)
        shape = z.shape[:-1]
        flat = self.mesh.reduce_to_cell(z.reshape(-1, self.mesh.dimension))
        out = [
            self.kernel.spectrum(c[:, None, :] + self._shifts).sum(axis=1) for c in self._chunks(flat)
        ]
        return np.concatenate(out).reshape(shape) if out else np.zeros(shape)

    def ratio(self, z) -> np.ndarray:
        """``F K(z) / S(z)``, computed in log space when the kernel allows it.

        For positive kernels this lies in ``[0, 1]`` and stays finite even
        when ``S`` underflows far from the origin of the cell.
        """
        z = _points(z, self.mesh.dimension)
        shape = z.shape[:-1]
        flat = z.reshape(-1, self.mesh.dimension)
        if not self._log_ok:
            return (self.kernel.spectrum(flat) / self(flat)).reshape(shape)
        reduced = self.mesh.reduce_to_cell(flat)
        out = []
        step = max(1, _CHUNK // len(self._shifts))
        for start in range(0, len(flat), step):
            zc, rc = flat[start : start + step], reduced[start : start + step]
            log_s = logsumexp(self.kernel.log_spectrum(rc[:, None, :] + self._shifts), axis=1)
            out.append(np.exp(self.kernel.log_spectrum(zc) - log_s))
        return np.concatenate(out).reshape(shape)

    def cell_samples(self, counts: Sequence[int]) -> tuple[list[np.ndarray], np.ndarray]:
        """Evaluate ``S`` on the endpoint-exclusive tensor grid of ``[0, 2 pi / a_k)``."""
        axes = [p * np.arange(n) / n for p, n in zip(self.mesh.dual_periods, counts)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return axes, self(grid)


def symbol_nonvanishing_check(symbol: Symbol, samples_per_axis: int = 64, floor: float = 1e-12) -> NonvanishingReport:
    """Sample ``|S|`` densely on the dual cell; pass iff its minimum exceeds ``floor``.

    A sign change between samples of a real symbol also fails the check since
    a zero must lie in between.
    """
    if samples_per_axis < 2:
        raise ConfigError("samples_per_axis must be at least 2")
    axes, values = symbol.cell_samples([samples_per_axis] * symbol.mesh.dimension)
    values = np.real(values)
    absval = np.abs(values)
    flat = int(np.argmin(absval))
    idx = np.unravel_index(flat, absval.shape)
    argmin = np.array([ax[i] for ax, i in zip(axes, idx)])
    minimum = float(absval.ravel()[flat])
    sign_change = bool(values.min() < 0 < values.max())
    return NonvanishingReport(minimum > floor and not sign_change, minimum, argmin, sign_change)
