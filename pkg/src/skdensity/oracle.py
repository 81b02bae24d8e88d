"""Brute-force references: dense solves, direct sums, plain trapezoid rules.

Nothing here shares code with the FFT-based paths it is used to check.
Everything is deterministic; callers pin radii and steps explicitly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import SolveError
from .kernels import Kernel
from .mesh import UniformMesh

MAX_NODES = 2000


@dataclass(frozen=True)
class DenseSolution:
    coefficients: np.ndarray
    condition: float
    residual: float
    matrix: np.ndarray


def _as_nodes(nodes) -> np.ndarray:
    nodes = np.asarray(nodes, dtype=float)
    return nodes[:, None] if nodes.ndim == 1 else nodes


def collocation_matrix(kernel: Kernel | Callable, nodes) -> np.ndarray:
    nodes = _as_nodes(nodes)
    k = kernel.spatial if isinstance(kernel, Kernel) else kernel
    return k(nodes[:, None, :] - nodes[None, :, :])


def dense_interpolation_solve(kernel: Kernel | Callable, nodes, rhs, max_condition: float = 1e14) -> DenseSolution:
    """Solve ``sum_j c_j K(x_i - x_j) = rhs_i`` by LU with partial pivoting."""
    nodes = _as_nodes(nodes)
    if len(nodes) > MAX_NODES:
        raise SolveError(f"{len(nodes)} nodes exceeds the dense-solve cap of {MAX_NODES}")
    mat = collocation_matrix(kernel, nodes)
    rhs = np.asarray(rhs, dtype=float)
    cond = float(np.linalg.cond(mat, 1))
    if not np.isfinite(cond) or cond > max_condition:
        raise SolveError(f"collocation matrix is ill-conditioned (1-norm condition {cond:.3g})")
    coef = np.linalg.solve(mat, rhs)
    residual = float(np.linalg.norm(mat @ coef - rhs))
    if residual > 1e-10 * max(np.linalg.norm(rhs), 1e-300):
        raise SolveError(f"residual {residual:.3g} too large (condition {cond:.3g})")
    return DenseSolution(coef, cond, residual, mat)


def dense_fundamental_spline(kernel: Kernel, mesh: UniformMesh, radius: int):
    """Fundamental spline on the 1D node set ``a * (-radius..radius)`` via a dense solve.

    Returns ``(coefficients, evaluator)``; coefficients are indexed ``-radius..radius``.
    """
    idx = np.arange(-radius, radius + 1)
    nodes = mesh.grid_point(idx[:, None])
    rhs = (idx == 0).astype(float)
    sol = dense_interpolation_solve(kernel, nodes, rhs)

    def evaluate(x):
        x = np.asarray(x, dtype=float).reshape(-1, mesh.dimension)
        return kernel.spatial(x[:, None, :] - nodes[None, :, :]) @ sol.coefficients

    return sol.coefficients, evaluate


def dense_interpolant(kernel: Kernel, nodes, values):
    """Evaluator of the dense-solve interpolant through ``(nodes, values)``."""
    nodes = _as_nodes(nodes)
    sol = dense_interpolation_solve(kernel, nodes, np.asarray(values, dtype=float))

    def evaluate(x):
        x = np.asarray(x, dtype=float).reshape(-1, nodes.shape[1])
        return kernel.spatial(x[:, None, :] - nodes[None, :, :]) @ sol.coefficients

    return evaluate


def periodization_bruteforce(kernel: Kernel, mesh: UniformMesh, z, radius: int) -> float:
    """``sum_{|m|_inf <= radius} F K(z + 2 pi A^{-1} m)`` term by term, no cell reduction."""
    z = np.asarray(z, dtype=float).reshape(mesh.dimension)
    period = 2.0 * np.pi / np.array(mesh.spacings)
    total = 0.0
    for m in itertools.product(range(-radius, radius + 1), repeat=mesh.dimension):
        total += float(kernel.spectrum(z + period * np.array(m)))
    return total


def gaussian_symbol_closed_form(kernel, mesh: UniformMesh, z, variant: str = "poisson", terms: int = 60) -> float:
    """Fourier-series forms of the Gaussian symbol obtained by Poisson summation.

    ``variant="poisson"`` uses lattice samples of the kernel,
    ``det(A) prod_k sum_m exp(i a_k m z_k) exp(-b_k a_k^2 m^2)``.
    ``variant="scaled"`` applies the alternative exponent
    ``exp(-b_k (a_k m / 2 pi)^2)`` instead.  Only one of them can agree with
    :func:`periodization_bruteforce`.
    """
    z = np.asarray(z, dtype=float).reshape(mesh.dimension)
    m = np.arange(-terms, terms + 1)
    value = mesh.det
    for ak, bk, zk in zip(mesh.spacings, kernel.b, z):
        if variant == "poisson":
            expo = -bk * (ak * m) ** 2
        elif variant == "scaled":
            expo = -bk * (ak * m / (2 * np.pi)) ** 2
        else:
            raise ValueError(f"unknown variant {variant!r}")
        value *= float(np.real(np.sum(np.exp(1j * ak * m * zk + expo))))
    return value


def fourier_quadrature(samples, x, frequency: float) -> complex:
    """Composite trapezoid rule for ``int exp(-i z x) f(x) dx`` on a uniform 1D grid."""
    samples = np.asarray(samples)
    x = np.asarray(x, dtype=float)
    h = x[1] - x[0]
    integrand = np.exp(-1j * frequency * x) * samples
    return complex(h * (integrand.sum() - 0.5 * (integrand[0] + integrand[-1])))


def trapezoid_1d(samples, h: float) -> float:
    samples = np.asarray(samples, dtype=float)
    return float(h * (samples.sum() - 0.5 * (samples[0] + samples[-1])))


def periodic_dense_solve(kernel: Callable, m: int, y: float, rhs) -> tuple[float, np.ndarray, float]:
    """Interpolate on the shifted nodes ``y + 2 pi k / m`` in ``span{1, K(x - 2 pi k / m)}``.

    The kernel coefficients are constrained to sum to zero, which makes the
    bordered ``(m+1) x (m+1)`` system square.  Returns ``(c0, c, condition)``
    with ``c`` indexed by ``k = 1..m``.
    """
    k = np.arange(1, m + 1)
    knots = 2 * np.pi * k / m
    points = y + knots
    mat = np.zeros((m + 1, m + 1))
    mat[:m, 0] = 1.0
    mat[:m, 1:] = kernel(points[:, None] - knots[None, :])
    mat[m, 1:] = 1.0
    b = np.concatenate([np.asarray(rhs, dtype=float), [0.0]])
    cond = float(np.linalg.cond(mat, 1))
    if not np.isfinite(cond) or cond > 1e14:
        raise SolveError(f"periodic collocation matrix is singular (condition {cond:.3g})")
    sol = np.linalg.solve(mat, b)
    return float(sol[0]), sol[1:], cond


def periodic_dense_fundamental(kernel: Callable, m: int, y: float):
    """Evaluator of the fundamental periodic spline (1 at ``y``, 0 at the other shifted nodes)."""
    rhs = np.zeros(m)
    rhs[-1] = 1.0  # node k = m coincides with y
    c0, c, _ = periodic_dense_solve(kernel, m, y, rhs)
    knots = 2 * np.pi * np.arange(1, m + 1) / m

    def evaluate(x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return c0 + kernel(x[:, None] - knots[None, :]) @ c

    return evaluate
