"""
Named reference scenarios with closed-form worst case behaviour.

    kl2pt       two equally weighted atoms with payoffs 0 and 1, p0 = 1
    burg2r      (0, 1) with mu(dr) = 2r dr, payoff r, p0 = 1
    never-breg  (0, 1) with mu(dr) = 2r dr, payoff r, p0(r) = 1/(2r)

Under the Burg divergence ``burg2r`` has a critical threshold at
k = log 2 - 1/2; under the Burg-Bregman lift ``never-breg`` admits no worst
case density for any k > 0.
"""

from typing import Callable, Dict, Optional

import numpy as np

from .config import SolverConfig
from .errors import ValidationError
from .scenario import Atom, ScenarioSpace, build_discrete, build_quadrature


def kl_two_point() -> ScenarioSpace:
    """KL-2PT: m = 0, M = 1, b0 = 1/2."""
    atoms = [
        Atom("a0", 0.0, 0.5, 0.0, 1.0),
        Atom("a1", 1.0, 0.5, 1.0, 1.0),
    ]
    return build_discrete(atoms)


def _two_r(r):
    return 2.0 * r


def _identity(r):
    return r


def burg_two_r(n: int = 200, mass_tol: float = 1e-6) -> ScenarioSpace:
    """BURG-2R on an n-node Gauss-Legendre grid; b0 = 2/3."""
    return build_quadrature(
        0.0, 1.0, n, _two_r, _identity, lambda r: np.ones_like(r), mass_tol=mass_tol,
    )


def never_bregman(n: int = 200, mass_tol: float = 1e-6) -> ScenarioSpace:
    """NEVER-BREG: uniform default distribution on (0, 1); b0 = 1/2.

    The closure point at r = 0 carries p0 = +inf.
    """
    return build_quadrature(
        0.0, 1.0, n, _two_r, _identity, lambda r: 1.0 / (2.0 * r), mass_tol=mass_tol,
    )


# Builders take the solver config; quadrature scenarios read its node count
# and p0 mass tolerance.
CATALOG: Dict[str, Callable[[SolverConfig], ScenarioSpace]] = {
    "kl2pt": lambda cfg: kl_two_point(),
    "burg2r": lambda cfg: burg_two_r(cfg.quadrature_nodes, cfg.quadrature_mass_tol),
    "never-breg": lambda cfg: never_bregman(cfg.quadrature_nodes, cfg.quadrature_mass_tol),
}


def get_scenario(name: str, config: Optional[SolverConfig] = None) -> ScenarioSpace:
    """Build a catalog scenario by name.

    Args:
        name: Catalog key (case-insensitive)
        config: Supplies ``quadrature_nodes`` and ``quadrature_mass_tol``
            (defaults when omitted)

    Raises:
        ValidationError: unknown name
    """
    key = str(name).strip().lower()
    if key not in CATALOG:
        raise ValidationError(
            f"unknown scenario '{name}' (expected one of: {', '.join(sorted(CATALOG))})"
        )
    return CATALOG[key](config or SolverConfig())
