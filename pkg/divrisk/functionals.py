"""
Integral functionals over a scenario space.

    H(p)        = sum_i w_i beta(r_i, p_i)
    B(p, q)     = sum_i w_i Delta_beta(r_i)(p_i, q_i)
    K(theta)    = sum_i w_i beta*(r_i, theta1 + theta2 x_i)
    p_theta(r)  = (beta*)'(r, theta1 + theta2 X(r))

Theta membership is strict and atomwise: theta1 + theta2 x_i must lie
below beta'(r_i, +inf) at every atom. A single atom in the +inf region of
beta* makes K = +inf.

All sums go through ``np.sum`` (pairwise reduction in index order), so
results are reproducible bit for bit.
"""

from __future__ import annotations

import logging
from typing import Tuple

import numpy as np

from .errors import DimensionError, DomainError, UndefinedError
from .integrands import IntegrandSpec
from .scenario import ScenarioSpace, expectation, total_mass
from .types import IntegrandMode, PythagoreanTerms, ThetaPair

logger = logging.getLogger(__name__)

INF = float("inf")


def check_compatible(spec: IntegrandSpec, space: ScenarioSpace) -> None:
    """A Bregman integrand must carry one reference value per atom of ``space``."""
    if spec.mode is IntegrandMode.BREGMAN and spec.n_atoms != space.size:
        raise DimensionError(
            f"integrand is bound to {spec.n_atoms} atoms, space has {space.size}"
        )


def _vector(space: ScenarioSpace, p, name: str = "p") -> np.ndarray:
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.shape[0] != space.size:
        raise DimensionError(f"{name} has {arr.shape[0]} values, space has {space.size} atoms")
    return arr


def _theta(theta) -> ThetaPair:
    if isinstance(theta, ThetaPair):
        return theta
    theta1, theta2 = theta
    return ThetaPair(float(theta1), float(theta2))


def _weighted_sum(space: ScenarioSpace, values: np.ndarray) -> float:
    if np.isposinf(values).any():
        return INF
    return float(np.sum(space.weights * values))


def dual_arguments(space: ScenarioSpace, theta) -> np.ndarray:
    """theta1 + theta2 x_i at every atom."""
    theta = _theta(theta)
    return theta.theta1 + theta.theta2 * space.payoffs


def h_value(spec: IntegrandSpec, space: ScenarioSpace, p) -> float:
    """H(p); D_f(P || P0) for an f-divergence and a density p. H(p0) = 0."""
    check_compatible(spec, space)
    return _weighted_sum(space, spec.beta(_vector(space, p)))


def bregman_distance(spec: IntegrandSpec, space: ScenarioSpace, p, q) -> float:
    """B(p, q) >= 0, zero iff p = q.

    Raises:
        DimensionError: length mismatch
        DomainError: q has a negative entry
    """
    check_compatible(spec, space)
    p = _vector(space, p)
    q = _vector(space, q, "q")
    if np.isnan(q).any() or (q < 0).any():
        raise DomainError("q must be nonnegative at every atom")
    return _weighted_sum(space, spec.delta(p, q))


def k_value(spec: IntegrandSpec, space: ScenarioSpace, theta) -> float:
    """K(theta1, theta2); +inf when any atom lies in the +inf region of beta*."""
    check_compatible(spec, space)
    return _weighted_sum(space, spec.conjugate(dual_arguments(space, theta)))


def theta_upper(spec: IntegrandSpec, space: ScenarioSpace) -> np.ndarray:
    """beta'(r_i, +inf) at every atom."""
    _, upper = spec.deriv_limits()
    return np.broadcast_to(upper, space.payoffs.shape)


def in_theta(spec: IntegrandSpec, space: ScenarioSpace, theta) -> bool:
    """Strict atomwise Theta membership, tolerance 0."""
    check_compatible(spec, space)
    tau = dual_arguments(space, theta)
    if np.isnan(tau).any():
        return False
    return bool(np.all(tau < theta_upper(spec, space)))


def _require_theta(spec: IntegrandSpec, space: ScenarioSpace, theta) -> np.ndarray:
    if not in_theta(spec, space, theta):
        theta = _theta(theta)
        raise DomainError(
            f"theta=({theta.theta1!r}, {theta.theta2!r}) is outside Theta for {spec.describe()}"
        )
    return dual_arguments(space, theta)


def family_density(spec: IntegrandSpec, space: ScenarioSpace, theta) -> np.ndarray:
    """p_theta at every atom; nonnegative, not necessarily of mass 1.

    Raises:
        DomainError: theta outside Theta
    """
    tau = _require_theta(spec, space, theta)
    return np.asarray(spec.conjugate_deriv(tau), dtype=float)


def k_grad(spec: IntegrandSpec, space: ScenarioSpace, theta) -> Tuple[float, float]:
    """(dK/dtheta1, dK/dtheta2): mass and payoff moment of p_theta."""
    q = family_density(spec, space, theta)
    return total_mass(space, q), expectation(space, q)


def family_entropy(spec: IntegrandSpec, space: ScenarioSpace, theta) -> float:
    """H(p_theta) via theta1 * mass + theta2 * moment - K(theta).

    Exact because the positive-part and Bregman terms vanish at p = p_theta.
    """
    theta = _theta(theta)
    mass, moment = k_grad(spec, space, theta)
    return theta.theta1 * mass + theta.theta2 * moment - k_value(spec, space, theta)


def pythagorean_terms(spec: IntegrandSpec, space: ScenarioSpace, p, theta) -> PythagoreanTerms:
    """Every term of the generalised Pythagorean identity for (p, theta).

    H(p) = theta1 * mass(p) + theta2 * E(p) - K(theta) + B(p, p_theta)
           + sum_i w_i |beta'(r_i, 0) - theta1 - theta2 x_i|_+ p_i

    Raises:
        DomainError: theta outside Theta
        UndefinedError: H(p) = +inf
    """
    theta = _theta(theta)
    p = _vector(space, p)
    tau = _require_theta(spec, space, theta)
    h = h_value(spec, space, p)
    if not np.isfinite(h):
        raise UndefinedError("Pythagorean identity undefined: H(p) is infinite")
    q = np.asarray(spec.conjugate_deriv(tau), dtype=float)
    lower, _ = spec.deriv_limits()
    with np.errstate(invalid="ignore"):
        gap = np.maximum(np.broadcast_to(lower, tau.shape) - tau, 0.0)
    positive_part = float(np.sum(space.weights * np.where(p == 0, 0.0, gap * p)))
    return PythagoreanTerms(
        h=h,
        theta1_term=theta.theta1 * total_mass(space, p),
        theta2_term=theta.theta2 * expectation(space, p),
        k=k_value(spec, space, theta),
        bregman=bregman_distance(spec, space, p, q),
        positive_part=positive_part,
    )


def pythagorean_residual(spec: IntegrandSpec, space: ScenarioSpace, p, theta) -> float:
    """H(p) minus the right-hand side of the Pythagorean identity (zero up to rounding)."""
    return pythagorean_terms(spec, space, p, theta).residual
