"""
Cardinal Gaussian splines on a uniform mesh
============================================

A Gaussian bump is not cardinal on the integers: it leaks into the
neighbouring nodes.  Dividing its spectrum by the periodized spectrum (the
symbol) fixes that, and the coefficients of the correction are Fourier
coefficients of ``1/S`` on the dual cell.
"""

import numpy as np

from skdensity import (
    GaussianKernel,
    GridSamples,
    IndexBox,
    Symbol,
    UniformMesh,
    coefficient_decay_report,
    compute_alpha,
    interpolate,
)

mesh = UniformMesh([1.0])
kernel = GaussianKernel([1.0])
symbol = Symbol(mesh, kernel)
print(f"symbol at 0: {symbol([0.0]):.7f}, cell minimum {symbol.minimum:.7f} at z = {symbol.argmin}")

###############################################################################
# Coefficients decay geometrically, roughly like exp(-|s|) here.

spline = compute_alpha(symbol)
report = coefficient_decay_report(spline)
print(f"coefficient box M = {spline.box.radii[0]}, FFT size N = {spline.sample_counts[0]}")
print(f"alpha_0 = {spline.coefficient(0):.7f}, fitted decay slope {report.slope:.3f} per index")

###############################################################################
# The result is 1 at the origin and vanishes at every other node.

nodes = np.arange(-5, 6, dtype=float)[:, None]
print("fundamental spline at nodes:", np.round(spline(nodes), 12))

###############################################################################
# Interpolating samples is a discrete convolution with the coefficients.

box = IndexBox([40])
samples = GridSamples.from_function(mesh, box, lambda x: np.cos(0.7 * x[..., 0]))
s = interpolate(spline, samples)
x = np.linspace(-5, 5, 11)[:, None]
print("max error of cos(0.7 x) interpolant on [-5, 5]:", np.abs(s(x) - np.cos(0.7 * x[:, 0])).max())
