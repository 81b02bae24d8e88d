"""
Periodic splines from Bernoulli monosplines
===========================================

On the circle, shifts of ``D_4`` span cubic splines.  The fundamental
spline has a closed form in terms of weighted node sums, which can be
checked against a small dense solve.
"""

import numpy as np

from skdensity.oracle import periodic_dense_fundamental
from skdensity.torus import BernoulliKernel, PeriodicFundamentalSpline, golomb_cubic, periodic_interpolant

m = 8
d4 = BernoulliKernel(4, cutoff=4000)
print(f"D_4 truncated at {d4.cutoff} terms, tail bound {d4.tail_bound:.1e}")

knots = 2 * np.pi * np.arange(m) / m
print("Golomb cubic at the knots:", np.round(golomb_cubic(m, knots, 4000), 12))

###############################################################################
# Shifting the interpolation points off the knots uses the sine sums too.

sp = PeriodicFundamentalSpline(d4, m, y=0.3)
x = np.linspace(0, 2 * np.pi, 200)
dense = periodic_dense_fundamental(d4, m, 0.3)
print(f"closed form vs dense solve, y = 0.3: {np.abs(sp(x) - dense(x)).max():.1e}")

f = lambda t: np.exp(np.sin(t))
s = periodic_interpolant(sp, f)
print(f"interpolating exp(sin t) with {m} points: sup error {np.abs(s(x) - f(x)).max():.2e}")
