"""
Brute-force reference values on tiny spaces.

Enumerates densities on a simplex grid in the atom masses w_i p_i (step
1/resolution) and evaluates V, F and W straight from their definitions,
without any dual machinery. Used to validate the solver.
"""

from __future__ import annotations

import logging

import numpy as np

from .errors import DomainError, SizeError, ValidationError
from .functionals import check_compatible
from .integrands import IntegrandSpec
from .scenario import ScenarioSpace

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 100
FEASIBILITY_SLACK = 1e-12


def brute_force_grid(space: ScenarioSpace, resolution: int) -> np.ndarray:
    """All grid densities, one row per density, in lexicographic index order.

    Raises:
        SizeError: more than 3 atoms
        ValidationError: resolution below 100
    """
    n = space.size
    if n > 3:
        raise SizeError(f"brute force supports at most 3 atoms, space has {n}")
    if n < 2:
        raise SizeError("brute force needs 2 or 3 atoms")
    if int(resolution) != resolution or resolution < MIN_RESOLUTION:
        raise ValidationError(f"resolution must be an integer >= {MIN_RESOLUTION}, got {resolution!r}")
    res = int(resolution)

    steps = np.arange(res + 1)
    if n == 2:
        counts = np.stack([steps, res - steps], axis=1)
    else:
        a, b = np.meshgrid(steps, steps, indexing="ij")
        keep = a + b <= res
        a, b = a[keep], b[keep]
        counts = np.stack([a, b, res - a - b], axis=1)

    masses = counts / float(res)
    return masses / space.weights


def _evaluate(spec: IntegrandSpec, space: ScenarioSpace, resolution: int):
    check_compatible(spec, space)
    grid = brute_force_grid(space, resolution)
    with np.errstate(invalid="ignore"):
        h = np.sum(space.weights * spec.beta(grid), axis=1)
    e = grid @ (space.weights * space.payoffs)
    return h, e


def brute_force_V(spec: IntegrandSpec, space: ScenarioSpace, k: float, resolution: int) -> float:
    """min E(p) over grid densities with H(p) <= k.

    Raises:
        DomainError: no grid density is feasible
    """
    h, e = _evaluate(spec, space, resolution)
    feasible = h <= k + FEASIBILITY_SLACK
    if not feasible.any():
        raise DomainError(f"no grid density satisfies H(p) <= {k!r} at resolution {resolution}")
    value = float(np.min(e[feasible]))
    logger.debug("[ORACLE] V(%.6g) ~ %.12g from %d feasible points", k, value, int(feasible.sum()))
    return value


def brute_force_F(spec: IntegrandSpec, space: ScenarioSpace, b: float, resolution: int) -> float:
    """min H(p) over grid densities with |E(p) - b| <= 1/resolution.

    Raises:
        DomainError: no grid density has expectation near b
    """
    h, e = _evaluate(spec, space, resolution)
    near = np.abs(e - b) <= 1.0 / resolution
    if not near.any():
        raise DomainError(f"no grid density has expectation within 1/{resolution} of {b!r}")
    return float(np.min(h[near]))


def brute_force_W(spec: IntegrandSpec, space: ScenarioSpace, lam: float, resolution: int) -> float:
    """min [E(p) + lam H(p)] over all grid densities.

    Raises:
        DomainError: lam <= 0
    """
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")
    h, e = _evaluate(spec, space, resolution)
    return float(np.min(e + lam * h))
