"""Thin wrapper over scipy.fft so the worker count is set in one place."""

from __future__ import annotations

import os

import scipy.fft

_workers: int | None = None


def set_threads(n: int | None) -> None:
    """Set the number of FFT worker threads (``None`` restores the default)."""
    global _workers
    if n is not None and n < 1:
        raise ValueError("thread count must be positive")
    _workers = n


def get_threads() -> int | None:
    if _workers is not None:
        return _workers
    env = os.environ.get("SKDENSITY_THREADS")
    return int(env) if env else None


def fftn(x, axes=None):
    return scipy.fft.fftn(x, axes=axes, workers=get_threads())


def ifftn(x, axes=None):
    return scipy.fft.ifftn(x, axes=axes, workers=get_threads())
