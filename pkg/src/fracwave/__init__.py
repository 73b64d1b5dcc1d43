"""fracwave: evolution of time-fractional diffusive waves.

Evaluates the Wright and M-Wright special functions, the Green functions of
the 1-D time-fractional diffusion-wave equation d^alpha_t u = d^2_x u
(0 < alpha <= 2, Caputo derivative in time), solves the Cauchy problem for
arbitrary initial signals by space convolution, and cross-checks every
analytic result against an independent finite-difference solver built from
discretized Caputo operators.
"""

from .errors import (
    DeltaNotRepresentable,
    FracwaveError,
    NonConvergent,
    ScenarioError,
    UnstableGrid,
)
from .specfun import (
    DEFAULT_TERM_CAP,
    DEFAULT_TOL,
    EvalResult,
    MWrightOrder,
    WrightParams,
    m_wright,
    reciprocal_gamma,
    wright,
)
from .green import (
    FracOrder,
    SimilarityPoint,
    green_cauchy,
    green_cauchy_second,
    green_signaling,
)
from .fracops import (
    FDGrid,
    SampledFunction,
    caputo_derivative,
    fd_solve,
    fractional_integral,
    rl_derivative,
)
from .solver import Signal, SolutionField, convolve_green, solve_cauchy
from .scenarios import Scenario, list_scenarios, load_scenario_file, run_scenario

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "DeltaNotRepresentable",
    "FracwaveError",
    "NonConvergent",
    "ScenarioError",
    "UnstableGrid",
    "DEFAULT_TERM_CAP",
    "DEFAULT_TOL",
    "EvalResult",
    "MWrightOrder",
    "WrightParams",
    "m_wright",
    "reciprocal_gamma",
    "wright",
    "FracOrder",
    "SimilarityPoint",
    "green_cauchy",
    "green_cauchy_second",
    "green_signaling",
    "FDGrid",
    "SampledFunction",
    "caputo_derivative",
    "fd_solve",
    "fractional_integral",
    "rl_derivative",
    "Signal",
    "SolutionField",
    "convolve_green",
    "solve_cauchy",
    "Scenario",
    "list_scenarios",
    "load_scenario_file",
    "run_scenario",
]
