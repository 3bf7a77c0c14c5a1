"""divrisk - worst case expected payoffs over divergence balls.

Computes V(k) = inf { E_p[X] : H(p) <= k } for convex integral functionals
H (f-divergences and Bregman distances from a default density p0), the
worst case localiser, existence regimes of worst case densities, and
Bregman-ball certificates for almost worst case densities.

Example:
    >>> from divrisk import IntegrandSpec, WorstCaseSolver, burg_two_r
    >>>
    >>> solver = WorstCaseSolver(IntegrandSpec.f_divergence("burg"), burg_two_r())
    >>> report = solver.value_at_k(1.0)
    >>> print(round(report.v, 6))  # 0.22313 = exp(-1.5)
    >>> print(report.is_density)   # False
"""

__version__ = "1.0.0"

from .types import (
    GeneratorId,
    IntegrandMode,
    InnerCase,
    TrivialBranch,
    Regime,
    ThetaPair,
    GEval,
    WorstCaseReport,
    ClassifyReport,
    AwcdCertificate,
    PythagoreanTerms,
)
from .errors import (
    DivriskError,
    ValidationError,
    DimensionError,
    DomainError,
    SizeError,
    UndefinedError,
    ConvergenceError,
)
from .config import SolverConfig

# Integrands
from .integrands import (
    Generator,
    GENERATORS,
    IntegrandSpec,
    beta_value,
    beta_conjugate,
    beta_deriv_limits,
    beta_conjugate_deriv,
    bregman_delta,
)

# Scenario spaces
from .scenario import (
    Atom,
    ClosurePoint,
    ScenarioSpace,
    build_discrete,
    build_quadrature,
    total_mass,
    expectation,
    is_density,
    load_scenario_csv,
    write_scenario_csv,
)
from .catalog import kl_two_point, burg_two_r, never_bregman, get_scenario

# Functionals
from .functionals import (
    h_value,
    bregman_distance,
    k_value,
    in_theta,
    family_density,
    family_entropy,
    k_grad,
    pythagorean_terms,
    pythagorean_residual,
)

# Solver
from .solver import (
    WorstCaseSolver,
    solve_inner,
    value_at_k,
    penalised_value,
    f_of_b,
    k_max_estimate,
    classify,
    certify_awcd,
    penalised_gap,
)

# Brute-force oracle
from .oracle import brute_force_grid, brute_force_V, brute_force_F, brute_force_W

# Trace logging
from .trace_logger import SolverTraceLogger, get_trace_logger, configure_trace_logging

__all__ = [
    # Types
    "GeneratorId",
    "IntegrandMode",
    "InnerCase",
    "TrivialBranch",
    "Regime",
    "ThetaPair",
    "GEval",
    "WorstCaseReport",
    "ClassifyReport",
    "AwcdCertificate",
    "PythagoreanTerms",
    # Errors
    "DivriskError",
    "ValidationError",
    "DimensionError",
    "DomainError",
    "SizeError",
    "UndefinedError",
    "ConvergenceError",
    # Configuration
    "SolverConfig",
    # Integrands
    "Generator",
    "GENERATORS",
    "IntegrandSpec",
    "beta_value",
    "beta_conjugate",
    "beta_deriv_limits",
    "beta_conjugate_deriv",
    "bregman_delta",
    # Scenario spaces
    "Atom",
    "ClosurePoint",
    "ScenarioSpace",
    "build_discrete",
    "build_quadrature",
    "total_mass",
    "expectation",
    "is_density",
    "load_scenario_csv",
    "write_scenario_csv",
    "kl_two_point",
    "burg_two_r",
    "never_bregman",
    "get_scenario",
    # Functionals
    "h_value",
    "bregman_distance",
    "k_value",
    "in_theta",
    "family_density",
    "family_entropy",
    "k_grad",
    "pythagorean_terms",
    "pythagorean_residual",
    # Solver
    "WorstCaseSolver",
    "solve_inner",
    "value_at_k",
    "penalised_value",
    "f_of_b",
    "k_max_estimate",
    "classify",
    "certify_awcd",
    "penalised_gap",
    # Oracle
    "brute_force_grid",
    "brute_force_V",
    "brute_force_F",
    "brute_force_W",
    # Trace logging
    "SolverTraceLogger",
    "get_trace_logger",
    "configure_trace_logging",
]
