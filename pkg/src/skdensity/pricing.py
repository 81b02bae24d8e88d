"""Discounted expectations of payoffs against a reconstructed density.

The state variable is the vector of log-returns ``X_T``; payoffs map it to
prices through caller-supplied spots, ``S_{j,T} = S_{j,0} exp(X_{T,j})``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .density import DensityApproximation, integrate
from .errors import ConfigError, CoverageError


class Payoff:
    """Callable on state arrays of shape (..., n); subclasses define ``__call__``."""

    dimension: int | None = None

    def __call__(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class SpreadPayoff(Payoff):
    """``(S_1 - sum_{j>=2} S_j - K)_+``; with one asset this is a call, with ``K = 0`` an exchange option."""

    strike: float
    spots: tuple[float, ...]

    def __init__(self, strike: float, spots: Sequence[float]):
        spots = tuple(float(s) for s in np.atleast_1d(spots))
        if strike < 0 or any(s <= 0 for s in spots):
            raise ConfigError("spread payoff needs strike >= 0 and positive spots")
        object.__setattr__(self, "strike", float(strike))
        object.__setattr__(self, "spots", spots)

    @property
    def dimension(self) -> int:
        return len(self.spots)

    def __call__(self, x):
        prices = np.asarray(self.spots) * np.exp(np.asarray(x))
        value = prices[..., 0] - prices[..., 1:].sum(axis=-1) - self.strike
        return np.maximum(value, 0.0)

    def to_dict(self) -> dict:
        return {"type": "spread", "strike": self.strike, "spots": list(self.spots)}


@dataclass(frozen=True)
class CallPayoff(Payoff):
    strike: float
    spot: float
    dimension: int = 1

    def __call__(self, x):
        return np.maximum(self.spot * np.exp(np.asarray(x)[..., 0]) - self.strike, 0.0)

    def to_dict(self) -> dict:
        return {"type": "call", "strike": self.strike, "spot": self.spot}


@dataclass(frozen=True)
class PutPayoff(Payoff):
    strike: float
    spot: float
    dimension: int = 1

    def __call__(self, x):
        return np.maximum(self.strike - self.spot * np.exp(np.asarray(x)[..., 0]), 0.0)

    def to_dict(self) -> dict:
        return {"type": "put", "strike": self.strike, "spot": self.spot}


@dataclass(frozen=True)
class FunctionPayoff(Payoff):
    """Wraps an arbitrary vectorized function of the state."""

    func: Callable
    dimension: int | None = None

    def __call__(self, x):
        return np.asarray(self.func(np.asarray(x)), dtype=float)


def payoff_from_dict(desc: dict) -> Payoff:
    kind = desc.get("type")
    try:
        if kind == "spread":
            return SpreadPayoff(desc["strike"], desc["spots"])
        if kind == "call":
            return CallPayoff(float(desc["strike"]), float(desc["spot"]))
        if kind == "put":
            return PutPayoff(float(desc["strike"]), float(desc["spot"]))
    except KeyError as exc:
        raise ConfigError(f"payoff {kind!r} is missing field {exc}") from exc
    raise ConfigError(f"unknown payoff type {kind!r}")


@dataclass(frozen=True)
class PricingConfig:
    r: float
    T: float
    payoff: Payoff

    def __post_init__(self):
        if not self.T > 0:
            raise ConfigError(f"maturity T must be positive, got {self.T!r}")
        if not self.r >= 0:
            raise ConfigError(f"rate r must be non-negative, got {self.r!r}")

    @property
    def discount(self) -> float:
        return float(np.exp(-self.r * self.T))


def _boundary_max(values: np.ndarray) -> float:
    faces = []
    for axis in range(values.ndim):
        faces.append(np.abs(np.take(values, [0, -1], axis=axis)).max())
    return max(faces)


def expected_payoff(density: DensityApproximation, payoff: Payoff | Callable, coverage_tol: float = 1e-8) -> float:
    """Tensor trapezoid of ``payoff * p`` on the density's own grid.

    Raises :class:`CoverageError` when ``|payoff * p|`` on the grid boundary
    exceeds ``coverage_tol`` times its maximum, i.e. when a material part of
    the integrand lies outside the grid.
    """
    if density.grid is None:
        raise ConfigError("pricing needs a density on a tensor grid")
    phi = np.asarray(payoff(density.points), dtype=float)
    weighted = np.abs(phi * density.values)
    peak = weighted.max()
    if peak > 0:
        edge = _boundary_max(weighted)
        if edge > coverage_tol * peak:
            lo = np.array(density.grid.offset)
            hi = lo + np.array(density.grid.step) * (np.array(density.grid.count) - 1)
            half = 0.5 * (hi - lo)
            raise CoverageError(
                f"payoff-weighted density on the grid boundary is {edge / peak:.3g} of its peak "
                f"(limit {coverage_tol:g}); extend the grid to about "
                f"[{(lo - half).tolist()}, {(hi + half).tolist()}]"
            )
    return integrate(density, phi)


@dataclass(frozen=True)
class PriceResult:
    price: float
    expected_payoff: float
    mass_check: float

    def to_dict(self) -> dict:
        return {"price": self.price, "expected_payoff": self.expected_payoff, "mass_check": self.mass_check}


def price(config: PricingConfig, density: DensityApproximation, coverage_tol: float = 1e-8) -> PriceResult:
    """``exp(-r T) E[payoff]`` plus the total mass of the density as a sanity figure."""
    ev = expected_payoff(density, config.payoff, coverage_tol)
    return PriceResult(config.discount * ev, ev, density.mass())
