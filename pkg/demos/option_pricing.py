"""
Pricing against a reconstructed density
=======================================

The density of the log-return under the risk-neutral drift is integrated
against the payoff with the trapezoid rule, on the grid it was produced on.
"""

import numpy as np
from scipy.stats import norm

from skdensity import (
    CallPayoff,
    GaussianKernel,
    GaussianModel,
    MertonModel,
    OutputGrid,
    PricingConfig,
    PutPayoff,
    SpreadPayoff,
    Symbol,
    UniformMesh,
    evaluate_on_uniform_grid_fast,
    price,
)

r, T, sigma, spot, strike = 0.05, 1.0, 0.2, 100.0, 100.0


def density(model, mesh, lower, upper, size):
    symbol = Symbol(mesh, GaussianKernel(np.ones(mesh.dimension)))
    return evaluate_on_uniform_grid_fast(model, mesh, symbol, OutputGrid.commensurate(mesh, lower, upper, size))


###############################################################################
# Black-Scholes: the drift r - sigma^2/2 comes from ``risk_neutral``.

mesh = UniformMesh([0.25])
d = density(GaussianModel.from_vols(sigma, t=T).risk_neutral(r), mesh, -2.5, 2.5, 4096)
call = price(PricingConfig(r, T, CallPayoff(strike, spot)), d).price
put = price(PricingConfig(r, T, PutPayoff(strike, spot)), d).price
d1 = (np.log(spot / strike) + (r + sigma**2 / 2) * T) / (sigma * np.sqrt(T))
bs = spot * norm.cdf(d1) - strike * np.exp(-r * T) * norm.cdf(d1 - sigma * np.sqrt(T))
print(f"call {call:.5f} vs closed form {bs:.5f}; parity gap {call - put - (spot - strike * np.exp(-r * T)):.1e}")

###############################################################################
# A jump model changes nothing in the pipeline.

jumpy = MertonModel(sigma=0.15, lam=0.8, jump_mean=-0.1, jump_std=0.2, t=T).risk_neutral(r)
d = density(jumpy, mesh, -3.0, 3.0, 4096)
print(f"Merton call {price(PricingConfig(r, T, CallPayoff(strike, spot)), d).price:.5f}")

###############################################################################
# Two assets: the exchange option (strike 0) has Margrabe's closed form.

mesh2 = UniformMesh([0.25, 0.25])
d2 = density(GaussianModel.from_vols([sigma, sigma], t=T).risk_neutral(r), mesh2, [-1.6, -1.6], [1.6, 1.6], [1024, 1024])
for k in (0.0, 5.0, 10.0):
    print(f"spread strike {k:4}: {price(PricingConfig(r, T, SpreadPayoff(k, [spot, spot])), d2).price:.5f}")
s = sigma * np.sqrt(2 * T)
print(f"Margrabe closed form: {spot * (2 * norm.cdf(s / 2) - 1):.5f}")
