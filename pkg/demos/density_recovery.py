"""
Recovering transition densities from characteristic functions
==============================================================

Only samples of the characteristic function on a lattice are used.  The
spectrum-over-symbol factor plays the part of a window, and the lattice
spacing controls accuracy.
"""

import numpy as np

from skdensity import (
    CauchyModel,
    GaussianKernel,
    GaussianModel,
    OutputGrid,
    Symbol,
    UniformMesh,
    VarianceGammaModel,
    evaluate_on_uniform_grid_fast,
    reconstruct_density,
)


def standard_normal(x):
    return np.exp(-0.5 * x**2) / np.sqrt(2 * np.pi)


###############################################################################
# Halving the spacing gains many digits for a Gaussian model.

x = np.linspace(-5, 5, 501)
for a in (1.0, 0.5, 0.25):
    mesh = UniformMesh([a])
    d = reconstruct_density(GaussianModel([[1.0]]), mesh, Symbol(mesh, GaussianKernel([1.0])), x)
    print(f"a = {a:4}: sup error {np.abs(d.values - standard_normal(x)).max():.2e}, box M = {d.box.radii[0]}")

###############################################################################
# Heavy tails mean a slowly decaying Phi.  The Cauchy case needs a fine mesh
# and a wide box (Phi = exp(-|x|) reaches 1e-12 only near |x| = 28).

mesh = UniformMesh([0.1])
d = reconstruct_density(CauchyModel(), mesh, Symbol(mesh, GaussianKernel([1.0])), x)
print(f"Cauchy, a = 0.1: sup error {np.abs(d.values - 1 / (np.pi * (1 + x**2))).max():.2e}, M = {d.box.radii[0]}")

###############################################################################
# On a grid with ``step * a = 2 pi / N`` the whole curve comes from one FFT.

mesh = UniformMesh([0.25])
vg = VarianceGammaModel(sigma=0.2, nu=0.3, theta=-0.15)
grid = OutputGrid.commensurate(mesh, -3.0, 3.0, fft_size=2048)
d = evaluate_on_uniform_grid_fast(vg, mesh, Symbol(mesh, GaussianKernel([1.0])), grid)
print(f"variance gamma: {d.values.size} points in {d.runtime_ms:.1f} ms, mass {d.mass():.6f}, min {d.min_value:.2e}")
