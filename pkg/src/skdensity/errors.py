"""Exception hierarchy.

Configuration problems and numerical failures are kept apart because the
command-line driver maps them to different exit codes (1 and 2).
"""


class SkDensityError(Exception):
    """Base class for every error raised by the package."""


class ConfigError(SkDensityError, ValueError):
    """Invalid input: bad shapes, bad parameters, schema violations."""


class CommensurabilityError(ConfigError):
    """Output grid step is incompatible with the FFT fast path."""


class NumericalError(SkDensityError, ArithmeticError):
    """A numerical check failed on otherwise valid input."""


class SingularSymbolError(NumericalError):
    """The periodized kernel spectrum vanishes (or nearly so) on the dual cell."""


class TruncationError(NumericalError):
    """A truncated infinite sum or integral cannot meet its tail tolerance."""


class ResolutionError(NumericalError):
    """FFT sampling or coefficient box too coarse for the requested tolerance."""


class NonDecayingError(NumericalError):
    """Characteristic function does not decay below tolerance within the cap."""


class ImaginaryResidueError(NumericalError):
    """Reconstructed density has a non-negligible imaginary part."""


class CoverageError(NumericalError):
    """Density grid does not cover the effective support of a payoff."""


class SolveError(NumericalError):
    """Dense collocation system is singular or badly conditioned."""
