"""Periodic sk-splines on the circle with ``m`` equispaced knots.

Knots are ``x_k = 2 pi k / m`` and interpolation points ``y_k = y + x_k``.
The fundamental spline (1 at ``y_k`` for ``k = 0 mod m``, 0 at the other
points) has the closed form

    sk(x, y) = 1/m + 1/m sum_{j=1}^{m-1}
               (rho_j(x) rho_j(y) + sigma_j(x) sigma_j(y)) / (rho_j(y)^2 + sigma_j(y)^2)

with ``rho_j``/``sigma_j`` the cosine/sine weighted node sums of the kernel.
For the Bernoulli monospline ``D_4`` and ``y = 0`` this is Golomb's cubic
fundamental spline.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import ConfigError, SingularSymbolError

_CHUNK = 1 << 22


def bernoulli_tail_bound(r: int, cutoff: int) -> float:
    """``sum_{k > N} k^{-r} <= N^{1-r} / (r-1)``."""
    return cutoff ** (1 - r) / (r - 1)


def bernoulli_eval(r: int, x, cutoff: int = 10_000) -> np.ndarray:
    """Partial sum ``sum_{k=1}^N k^{-r} cos(k x + r pi / 2)`` of the Bernoulli monospline."""
    if r < 2:
        raise ConfigError("Bernoulli monospline order must be >= 2")
    if cutoff < 1:
        raise ConfigError("cutoff must be >= 1")
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    out = np.zeros(flat.shape)
    phase = r * np.pi / 2
    step = max(1, _CHUNK // max(flat.size, 1))
    # accumulate smallest terms first
    for hi in range(cutoff, 0, -step):
        k = np.arange(max(hi - step, 0) + 1, hi + 1, dtype=float)[::-1]
        out += np.cos(np.multiply.outer(flat, k) + phase) @ k**-r
    return out.reshape(x.shape)


@dataclass(frozen=True)
class BernoulliKernel:
    """``D_r`` truncated at ``cutoff`` terms, with its analytic tail bound."""

    r: int
    cutoff: int = 10_000

    def __post_init__(self):
        if self.r < 2:
            raise ConfigError("Bernoulli monospline order must be >= 2")

    @property
    def tail_bound(self) -> float:
        return bernoulli_tail_bound(self.r, self.cutoff)

    def __call__(self, x) -> np.ndarray:
        return bernoulli_eval(self.r, x, self.cutoff)


def rho_sigma(kernel: Callable, m: int, j: int, x) -> tuple[np.ndarray, np.ndarray]:
    """Cosine and sine weighted node sums ``sum_nu (cos, sin)(2 pi nu j / m) K(x - 2 pi nu / m)``."""
    x = np.asarray(x, dtype=float)
    nu = np.arange(1, m + 1)
    vals = kernel(np.subtract.outer(x, 2 * np.pi * nu / m))
    ang = 2 * np.pi * nu * j / m
    return vals @ np.cos(ang), vals @ np.sin(ang)


def _all_rho_sigma(kernel: Callable, m: int, x) -> tuple[np.ndarray, np.ndarray]:
    """``rho_j(x), sigma_j(x)`` for ``j = 1..m-1``; arrays of shape (..., m-1)."""
    x = np.asarray(x, dtype=float)
    nu = np.arange(1, m + 1)
    j = np.arange(1, m)
    vals = kernel(np.subtract.outer(x, 2 * np.pi * nu / m))
    ang = 2 * np.pi * np.outer(nu, j) / m
    return vals @ np.cos(ang), vals @ np.sin(ang)


@dataclass
class PeriodicFundamentalSpline:
    """Fundamental periodic sk-spline for ``m`` knots and shift ``y``.

    Raises :class:`SingularSymbolError` when some ``rho_j(y)^2 + sigma_j(y)^2``
    vanishes relative to the largest one.
    """

    kernel: Callable
    m: int
    y: float = 0.0
    rel_floor: float = 1e-13
    rho_y: np.ndarray = field(init=False, repr=False)
    sigma_y: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise ConfigError("node count must be positive")
        self.rho_y, self.sigma_y = _all_rho_sigma(self.kernel, self.m, self.y)
        denom = self.rho_y**2 + self.sigma_y**2
        if self.m > 1 and not np.all(denom > self.rel_floor * denom.max()):
            bad = int(np.argmin(denom)) + 1
            raise SingularSymbolError(
                f"existence condition fails for m={self.m}, y={self.y}: rho^2+sigma^2 = {denom.min():.3g} at j={bad}"
            )
        self._denom = denom

    @property
    def nodes(self) -> np.ndarray:
        """Interpolation points ``y_k``, ``k = 1..m`` (the last one is ``y + 2 pi``)."""
        return self.y + 2 * np.pi * np.arange(1, self.m + 1) / self.m

    def __call__(self, x) -> np.ndarray:
        return fundamental_periodic(self, x)


def fundamental_periodic(spline: PeriodicFundamentalSpline, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    m = spline.m
    if m == 1:
        return np.ones(x.shape)
    rho, sigma = _all_rho_sigma(spline.kernel, m, x)
    terms = (rho * spline.rho_y + sigma * spline.sigma_y) / spline._denom
    return 1.0 / m + terms.sum(axis=-1) / m


def golomb_cubic(m: int, x, cutoff: int = 10_000) -> np.ndarray:
    """Golomb's cubic fundamental spline ``1/m + 1/m sum_j rho_j(x) / rho_j(0)`` with ``K = D_4``."""
    kernel = BernoulliKernel(4, cutoff)
    rho0, _ = _all_rho_sigma(kernel, m, 0.0)
    if np.any(rho0 == 0):
        raise SingularSymbolError("rho_j(0) vanishes; Golomb's formula undefined")
    rho, _ = _all_rho_sigma(kernel, m, np.asarray(x, dtype=float))
    return 1.0 / m + (rho / rho0).sum(axis=-1) / m


def periodic_interpolant(spline: PeriodicFundamentalSpline, f: Callable):
    """``x -> sum_k f(y_k) sk(x - x_k)`` over the ``m`` shifted nodes."""
    knots = 2 * np.pi * np.arange(1, spline.m + 1) / spline.m
    values = np.asarray(f(spline.nodes), dtype=float)

    def evaluate(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        basis = fundamental_periodic(spline, np.subtract.outer(x, knots))
        return basis @ values

    return evaluate
