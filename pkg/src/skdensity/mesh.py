"""Uniform lattices in R^n with diagonal scaling.

The mesh with spacings ``a = (a_1, ..., a_n)`` consists of the points
``x_m = (a_1 m_1, ..., a_n m_n)`` for integer ``m``.  Its dual lattice is
``2*pi*(m_1/a_1, ..., m_n/a_n)`` and the dual cell is the box
``[0, 2*pi/a_1] x ... x [0, 2*pi/a_n]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ConfigError


def _as_vector(values, n: int, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != n:
        raise ConfigError(f"{name} has length {arr.shape[-1]}, mesh dimension is {n}")
    return arr


@dataclass(frozen=True)
class UniformMesh:
    """Lattice ``A Z^n`` with ``A = diag(spacings)``."""

    spacings: tuple[float, ...]

    def __init__(self, spacings: Sequence[float] | float):
        sp = np.atleast_1d(np.asarray(spacings, dtype=float))
        if sp.ndim != 1 or sp.size == 0:
            raise ConfigError("spacings must be a non-empty vector")
        if not np.all(np.isfinite(sp)) or np.any(sp <= 0):
            raise ConfigError(f"spacings must be positive and finite, got {sp.tolist()}")
        object.__setattr__(self, "spacings", tuple(float(v) for v in sp))

    @property
    def dimension(self) -> int:
        return len(self.spacings)

    @property
    def a(self) -> np.ndarray:
        return np.array(self.spacings)

    @property
    def det(self) -> float:
        return float(np.prod(self.spacings))

    @property
    def dual_periods(self) -> np.ndarray:
        """Side lengths ``2*pi/a_k`` of the dual cell."""
        return 2.0 * np.pi / self.a

    def grid_point(self, m) -> np.ndarray:
        """Return ``A m``; ``m`` may be a stack of index vectors of shape (..., n)."""
        m = _as_vector(m, self.dimension, "index")
        return m * self.a

    def dual_point(self, m) -> np.ndarray:
        """Return ``2*pi A^{-1} m``."""
        m = _as_vector(m, self.dimension, "index")
        return 2.0 * np.pi * m / self.a

    def reduce_to_cell(self, z) -> np.ndarray:
        """Map frequencies into the centred cell ``[-pi/a_k, pi/a_k)`` by dual shifts."""
        z = _as_vector(z, self.dimension, "frequency")
        p = self.dual_periods
        return np.mod(z + 0.5 * p, p) - 0.5 * p

    def to_dict(self) -> dict:
        return {"spacings": list(self.spacings)}


@dataclass(frozen=True)
class IndexBox:
    """Integer box ``{m : |m_k| <= M_k}``."""

    radii: tuple[int, ...]

    def __init__(self, radii: Sequence[int] | int):
        r = np.atleast_1d(np.asarray(radii))
        if r.ndim != 1 or r.size == 0:
            raise ConfigError("radii must be a non-empty vector")
        if not np.all(r == np.round(r)) or np.any(r < 0):
            raise ConfigError(f"radii must be non-negative integers, got {r.tolist()}")
        object.__setattr__(self, "radii", tuple(int(v) for v in r))

    @classmethod
    def uniform(cls, radius: int, dimension: int) -> "IndexBox":
        return cls([radius] * dimension)

    @property
    def dimension(self) -> int:
        return len(self.radii)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(2 * r + 1 for r in self.radii)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iterate_indices(self)

    def axis_ranges(self) -> list[np.ndarray]:
        return [np.arange(-r, r + 1) for r in self.radii]

    def indices(self) -> np.ndarray:
        """All indices as an integer array of shape (size, n), lexicographic."""
        grids = np.meshgrid(*self.axis_ranges(), indexing="ij")
        return np.stack([g.ravel() for g in grids], axis=-1)

    def shell(self) -> np.ndarray:
        """Indices on the boundary of the box (``|m_k| = M_k`` for some k)."""
        idx = self.indices()
        on_face = np.any(np.abs(idx) == np.array(self.radii), axis=1)
        return idx[on_face]

    def grow(self, by: int = 1) -> "IndexBox":
        return IndexBox([r + by for r in self.radii])


def iterate_indices(box: IndexBox) -> Iterator[tuple[int, ...]]:
    """Yield every index in ``box`` once, in lexicographic order (last axis fastest)."""
    return itertools.product(*(range(-r, r + 1) for r in box.radii))


def linf_shells(box: IndexBox) -> np.ndarray:
    """l-infinity shell number of each index of ``box.indices()``."""
    return np.abs(box.indices()).max(axis=1)
