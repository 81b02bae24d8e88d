"""Cardinal sk-spline interpolation on uniform meshes and density reconstruction
from characteristic functions of Lévy processes."""

from ._fft import set_threads
from .cardinal import (
    CardinalSpline,
    GridSamples,
    Interpolant,
    coefficient_decay_report,
    compute_alpha,
    fundamental_eval_spatial,
    fundamental_eval_spectral,
    interpolate,
    spline_spectrum,
)
from .density import (
    DensityApproximation,
    OutputGrid,
    evaluate_on_uniform_grid_fast,
    reconstruct_density,
    select_truncation,
)
from .errors import (
    CommensurabilityError,
    ConfigError,
    CoverageError,
    ImaginaryResidueError,
    NonDecayingError,
    NumericalError,
    ResolutionError,
    SingularSymbolError,
    SkDensityError,
    SolveError,
    TruncationError,
)
from .kernels import CosineGaussianKernel, GaussianKernel, Kernel, Symbol, symbol_nonvanishing_check
from .levy import (
    CauchyModel,
    ExponentModel,
    GaussianModel,
    LevyModel,
    MertonModel,
    NIGModel,
    VarianceGammaModel,
    characteristic_function,
)
from .mesh import IndexBox, UniformMesh, iterate_indices
from .pricing import CallPayoff, PricingConfig, PutPayoff, SpreadPayoff, expected_payoff, price

__version__ = "0.1.0"
