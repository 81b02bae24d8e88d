"""Characteristic exponents of Lévy models.

Every model satisfies ``E exp(i <x, X_t>) = exp(-t psi(x))`` with
``psi(0) = 0``.  Each family has a drift ``mu`` entering as ``-i <mu, x>``;
``risk_neutral`` picks ``mu`` so that ``E exp(X_{t,k}) = exp(r t)`` on every
axis.  Pricing code never adjusts drifts itself.
"""

from __future__ import annotations

import abc
import dataclasses
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError


def _points(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        x = x.reshape(1)
    if x.shape[-1] != n:
        raise ConfigError(f"point has trailing dimension {x.shape[-1]}, model dimension is {n}")
    return x


class LevyModel(abc.ABC):
    """Base class; subclasses define ``_exponent_without_drift`` on arrays of shape (..., n)."""

    t: float
    mu: np.ndarray | float

    @property
    @abc.abstractmethod
    def dimension(self) -> int: ...

    @abc.abstractmethod
    def _exponent_without_drift(self, x: np.ndarray) -> np.ndarray: ...

    def _check_horizon(self):
        if not self.t > 0 or not np.isfinite(self.t):
            raise ConfigError(f"horizon t must be positive, got {self.t!r}")

    def exponent(self, x) -> np.ndarray:
        x = _points(x, self.dimension)
        mu = np.broadcast_to(np.asarray(self.mu, dtype=float), (self.dimension,))
        return self._exponent_without_drift(x) - 1j * (x @ mu)

    def characteristic_function(self, x) -> np.ndarray:
        return np.exp(-self.t * self.exponent(x))

    def martingale_drift(self, r: float) -> np.ndarray:
        """Per-axis drift making ``exp(X_k) exp(-r t)`` a martingale."""
        eye = np.eye(self.dimension)
        return np.array([r + np.real(self._exponent_without_drift(-1j * e)) for e in eye])

    def risk_neutral(self, r: float) -> "LevyModel":
        mu = self.martingale_drift(r)
        return dataclasses.replace(self, mu=mu if self.dimension > 1 else float(mu[0]))

    def to_dict(self) -> dict:
        out = {"family": self.family, "t": self.t}
        for f in dataclasses.fields(self):
            if f.name != "t":
                out[f.name] = np.asarray(getattr(self, f.name)).tolist()
        return out


def characteristic_function(model: LevyModel, x) -> np.ndarray:
    return model.characteristic_function(x)


@dataclass(frozen=True)
class GaussianModel(LevyModel):
    """Brownian motion with covariance ``cov`` per unit time: ``psi = <x, cov x>/2 - i <mu, x>``."""

    cov: np.ndarray
    mu: np.ndarray | float = 0.0
    t: float = 1.0
    family = "gaussian"

    def __post_init__(self):
        cov = np.atleast_2d(np.asarray(self.cov, dtype=float))
        if cov.shape[0] != cov.shape[1] or not np.allclose(cov, cov.T):
            raise ConfigError("covariance must be a symmetric square matrix")
        if np.linalg.eigvalsh(cov).min() <= 0:
            raise ConfigError("covariance must be positive definite")
        object.__setattr__(self, "cov", cov)
        self._check_horizon()

    @classmethod
    def from_vols(cls, sigma: Sequence[float] | float, corr=None, mu=0.0, t: float = 1.0) -> "GaussianModel":
        sigma = np.atleast_1d(np.asarray(sigma, dtype=float))
        corr = np.eye(sigma.size) if corr is None else np.asarray(corr, dtype=float)
        return cls(np.outer(sigma, sigma) * corr, mu, t)

    @property
    def dimension(self) -> int:
        return self.cov.shape[0]

    def _exponent_without_drift(self, x):
        return 0.5 * np.einsum("...i,ij,...j->...", x, self.cov, x)


@dataclass(frozen=True)
class VarianceGammaModel(LevyModel):
    """Variance Gamma: ``psi = log(1 - i theta nu x + sigma^2 nu x^2 / 2) / nu - i mu x``."""

    sigma: float
    nu: float
    theta: float = 0.0
    mu: float = 0.0
    t: float = 1.0
    family = "variance_gamma"

    def __post_init__(self):
        if not (self.sigma > 0 and self.nu > 0):
            raise ConfigError("VG needs sigma > 0 and nu > 0")
        self._check_horizon()

    @property
    def dimension(self) -> int:
        return 1

    def _exponent_without_drift(self, x):
        u = x[..., 0]
        return np.log(1 - 1j * self.theta * self.nu * u + 0.5 * self.sigma**2 * self.nu * u**2) / self.nu


@dataclass(frozen=True)
class NIGModel(LevyModel):
    """Normal inverse Gaussian: ``psi = delta (sqrt(alpha^2 - (beta + i x)^2) - sqrt(alpha^2 - beta^2)) - i mu x``."""

    alpha: float
    beta: float
    delta: float
    mu: float = 0.0
    t: float = 1.0
    family = "nig"

    def __post_init__(self):
        if not (self.alpha > abs(self.beta) and self.delta > 0):
            raise ConfigError("NIG needs alpha > |beta| and delta > 0")
        self._check_horizon()

    @property
    def dimension(self) -> int:
        return 1

    def _exponent_without_drift(self, x):
        u = x[..., 0]
        g = np.sqrt(self.alpha**2 - self.beta**2)
        return self.delta * (np.sqrt(self.alpha**2 - (self.beta + 1j * u) ** 2) - g)


@dataclass(frozen=True)
class MertonModel(LevyModel):
    """Merton jump diffusion with Gaussian jumps ``N(jump_mean, jump_std^2)`` at rate ``lam``."""

    sigma: float
    lam: float
    jump_mean: float
    jump_std: float
    mu: float = 0.0
    t: float = 1.0
    family = "merton"

    def __post_init__(self):
        if not (self.sigma > 0 and self.lam >= 0 and self.jump_std >= 0):
            raise ConfigError("Merton needs sigma > 0, lam >= 0, jump_std >= 0")
        self._check_horizon()

    @property
    def dimension(self) -> int:
        return 1

    def _exponent_without_drift(self, x):
        u = x[..., 0]
        jump_cf = np.exp(1j * self.jump_mean * u - 0.5 * self.jump_std**2 * u**2)
        return 0.5 * self.sigma**2 * u**2 - self.lam * (jump_cf - 1)


@dataclass(frozen=True)
class CauchyModel(LevyModel):
    """Isotropic Cauchy process, ``psi = scale |x| - i <mu, x>``.

    No exponential moments, so ``risk_neutral`` is meaningless here.
    """

    scale: float = 1.0
    mu: np.ndarray | float = 0.0
    t: float = 1.0
    dim: int = 1
    family = "cauchy"

    def __post_init__(self):
        if not self.scale > 0:
            raise ConfigError("Cauchy scale must be positive")
        self._check_horizon()

    @property
    def dimension(self) -> int:
        return self.dim

    def _exponent_without_drift(self, x):
        return self.scale * np.linalg.norm(x, axis=-1) + 0j

    def martingale_drift(self, r: float) -> np.ndarray:
        raise ConfigError("Cauchy model has no exponential moment; no martingale drift exists")


@dataclass(frozen=True)
class ExponentModel(LevyModel):
    """Model given by an arbitrary characteristic exponent callable (no drift term added)."""

    psi: Callable
    dim: int = 1
    t: float = 1.0
    mu: float = 0.0
    family = "custom"

    def __post_init__(self):
        self._check_horizon()

    @property
    def dimension(self) -> int:
        return self.dim

    def _exponent_without_drift(self, x):
        return np.asarray(self.psi(x), dtype=complex)

    def to_dict(self) -> dict:
        return {"family": self.family, "t": self.t, "dim": self.dim}


_FAMILIES = {
    "variance_gamma": VarianceGammaModel,
    "nig": NIGModel,
    "merton": MertonModel,
}


def model_from_dict(desc: dict, r: float | None = None) -> LevyModel:
    """Build a model from ``{"family": ..., "t": ..., "params": {...}}``.

    ``params["mu"] == "risk_neutral"`` requests the martingale drift for rate ``r``.
    """
    family = desc.get("family")
    params = dict(desc.get("params", {}))
    t = float(desc.get("t", 1.0))
    mu = params.pop("mu", 0.0)
    want_rn = mu == "risk_neutral"
    if want_rn:
        if r is None:
            raise ConfigError("risk_neutral drift requested but no rate available")
        mu = 0.0
    try:
        if family == "gaussian":
            if "cov" in params:
                model = GaussianModel(params.pop("cov"), mu, t)
            else:
                model = GaussianModel.from_vols(params.pop("sigma"), params.pop("corr", None), mu, t)
        elif family == "cauchy":
            model = CauchyModel(params.pop("scale", 1.0), mu, t, int(params.pop("dim", 1)))
        elif family in _FAMILIES:
            model = _FAMILIES[family](**params, mu=mu, t=t)
            params = {}
        else:
            raise ConfigError(f"unknown model family {family!r}")
    except (KeyError, TypeError) as exc:
        raise ConfigError(f"bad parameters for model family {family!r}: {exc}") from exc
    if params:
        raise ConfigError(f"unknown parameters for {family!r}: {sorted(params)}")
    return model.risk_neutral(r) if want_rn else model
