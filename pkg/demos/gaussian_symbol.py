"""
The Gaussian symbol in closed form
==================================

Poisson summation turns the periodized Gaussian spectrum into a rapidly
convergent cosine series.  The direct lattice sum settles which exponent
the series carries.
"""

import numpy as np

from skdensity import GaussianKernel, UniformMesh
from skdensity.oracle import gaussian_symbol_closed_form, periodization_bruteforce

kernel = GaussianKernel([1.0])
for a in (0.5, 1.0, 2.0):
    mesh = UniformMesh([a])
    for z in (0.0, 1.0):
        direct = periodization_bruteforce(kernel, mesh, [z], 40)
        series = gaussian_symbol_closed_form(kernel, mesh, [z], "poisson")
        other = gaussian_symbol_closed_form(kernel, mesh, [z], "scaled")
        print(f"a={a}, z={z}: direct {direct:.12f}  exp(-b a^2 m^2) {series:.12f}  exp(-b (a m/2pi)^2) {other:.6f}")
