"""Type definitions for the divrisk library."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .utils import to_key_value_lines


class GeneratorId(Enum):
    """Built-in convex generators f."""
    KL = "kl"             # s log s
    BURG = "burg"         # -log s
    SQUARED = "squared"   # s^2
    CHI2 = "chi2"         # (s - 1)^2


class IntegrandMode(Enum):
    """How an integrand beta(r, s) is built from its generator."""
    F_DIVERGENCE = "f_divergence"   # beta(r, s) = f(s)
    BREGMAN = "bregman"             # beta(r, s) = Delta_f(s, p0(r))


class InnerCase(Enum):
    """Where the inner minimiser over theta1 sits."""
    INTERIOR = "INTERIOR"   # mass of q_theta2 equals 1
    BOUNDARY = "BOUNDARY"   # theta1 pinned at the edge of dom K, mass < 1


class TrivialBranch(Enum):
    """Thresholds for which V(k) needs no optimisation."""
    NONE = "NONE"
    K_ZERO = "K_ZERO"         # V(0) = b0
    K_GE_KMAX = "K_GE_KMAX"   # V(k) = m


class Regime(Enum):
    """Worst case density existence regimes."""
    ALWAYS_WCD = "ALWAYS_WCD"
    CRITICAL = "CRITICAL"
    NEVER_WCD_OBSERVED = "NEVER_WCD_OBSERVED"


@dataclass(frozen=True)
class ThetaPair:
    """A point (theta1, theta2) of the dual parameter plane.

    Membership in Theta and in dom K is checked by the functionals,
    not here.
    """
    theta1: float
    theta2: float


@dataclass
class GEval:
    """One point of the dual curve G(theta2) = min_theta1 [K(theta1, theta2) - theta1].

    Attributes:
        theta2: Abscissa
        g_value: G(theta2)
        theta1_star: Minimising theta1
        case: INTERIOR (mass 1) or BOUNDARY (mass < 1)
        mass: Integral of q_theta2
        payoff_moment: Integral of X q_theta2, the right derivative of G
    """
    theta2: float
    g_value: float
    theta1_star: float
    case: InnerCase
    mass: float
    payoff_moment: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theta2": self.theta2,
            "g": self.g_value,
            "theta1_star": self.theta1_star,
            "case": self.case.value,
            "mass": self.mass,
            "payoff_moment": self.payoff_moment,
        }

    def to_lines(self) -> List[str]:
        fields = self.to_dict()
        fields["case"] = self.case
        return to_key_value_lines(fields)


@dataclass
class WorstCaseReport:
    """Result of V(k) together with its worst case localiser.

    Attributes:
        k: Divergence threshold
        v: Worst case expected payoff V(k)
        theta2_star: Maximising theta2 (0 for k=0, -inf when k >= k_max)
        theta1_star: Matching inner minimiser
        localiser: q_hat_k at every atom (empty when k >= k_max)
        localiser_mass: Integral of q_hat_k
        is_density: Whether q_hat_k has mass 1
        is_wcd: Whether q_hat_k is a worst case density
        trivial_branch: Which closed form, if any, produced v
        k_max: Estimated k_max of the space
        h_localiser: H(q_hat_k), inf if not finite
        payoff_moment: Integral of X q_hat_k
        consistency_gap: |F(v) - k|
    """
    k: float
    v: float
    theta2_star: float
    theta1_star: float
    localiser: np.ndarray
    localiser_mass: float
    is_density: bool
    is_wcd: bool
    trivial_branch: TrivialBranch = TrivialBranch.NONE
    k_max: float = float("inf")
    h_localiser: float = float("nan")
    payoff_moment: float = float("nan")
    consistency_gap: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "v": self.v,
            "theta2_star": self.theta2_star,
            "theta1_star": self.theta1_star,
            "localiser_mass": self.localiser_mass,
            "is_density": self.is_density,
            "is_wcd": self.is_wcd,
            "trivial_branch": self.trivial_branch.value,
            "k_max": self.k_max,
            "h_localiser": self.h_localiser,
            "payoff_moment": self.payoff_moment,
            "consistency_gap": self.consistency_gap,
            "localiser": [float(x) for x in self.localiser],
        }

    def to_lines(self) -> List[str]:
        fields = self.to_dict()
        fields.pop("localiser")
        fields["trivial_branch"] = self.trivial_branch
        return to_key_value_lines(fields)


@dataclass
class ClassifyReport:
    """Existence classification of worst case densities across k.

    ``evidential`` is true when the verdict rests on the probe grid
    rather than on a closed-form criterion.
    """
    regime: Regime
    k_critical: Optional[float] = None
    theta_tilde_min: Optional[float] = None
    theta_min: float = float("-inf")
    sigma: Optional[float] = None
    probe_grid: List[Tuple[float, float]] = field(default_factory=list)
    evidential: bool = False
    k_probe: Optional[float] = None
    wcd_at_probe: Optional[bool] = None

    @property
    def probe_boundary_count(self) -> int:
        return sum(1 for _, mass in self.probe_grid if mass < 1.0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "regime": self.regime.value,
            "k_critical": self.k_critical,
            "theta_tilde_min": self.theta_tilde_min,
            "theta_min": self.theta_min,
            "sigma": self.sigma,
            "evidential": self.evidential,
            "probe_count": len(self.probe_grid),
            "k_probe": self.k_probe,
            "wcd_at_probe": self.wcd_at_probe,
            "probe_grid": [[t, m] for t, m in self.probe_grid],
        }

    def to_lines(self) -> List[str]:
        fields = self.to_dict()
        fields.pop("probe_grid")
        fields["regime"] = self.regime
        if self.k_probe is None:
            fields.pop("k_probe")
            fields.pop("wcd_at_probe")
        return to_key_value_lines(fields)


@dataclass
class AwcdCertificate:
    """Almost worst case density check with its Bregman ball bound.

    Attributes:
        epsilon: Allowed excess of the expected payoff over V(k)
        gamma: Allowed excess of H(p) over k
        is_awcd: H(p) <= k + gamma and E(p) <= V(k) + epsilon
        bregman_to_localiser: B(p, q_hat_k)
        bound: gamma - theta2_star * epsilon
        bound_holds: bregman_to_localiser <= bound (+ slack)
    """
    epsilon: float
    gamma: float
    is_awcd: bool
    bregman_to_localiser: float
    bound: float
    bound_holds: bool
    k: float = float("nan")
    v: float = float("nan")
    theta2_star: float = float("nan")
    h_p: float = float("nan")
    expectation_p: float = float("nan")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "v": self.v,
            "theta2_star": self.theta2_star,
            "epsilon": self.epsilon,
            "gamma": self.gamma,
            "h_p": self.h_p,
            "expectation_p": self.expectation_p,
            "is_awcd": self.is_awcd,
            "bregman_to_localiser": self.bregman_to_localiser,
            "bound": self.bound,
            "bound_holds": self.bound_holds,
        }

    def to_lines(self) -> List[str]:
        return to_key_value_lines(self.to_dict())


@dataclass
class PythagoreanTerms:
    """Terms of H(p) = theta1*mass + theta2*E(p) - K + B(p, p_theta) + positive part."""
    h: float
    theta1_term: float
    theta2_term: float
    k: float
    bregman: float
    positive_part: float

    @property
    def rhs(self) -> float:
        return self.theta1_term + self.theta2_term - self.k + self.bregman + self.positive_part

    @property
    def residual(self) -> float:
        return self.h - self.rhs

    def to_dict(self) -> Dict[str, Any]:
        return {
            "h": self.h,
            "theta1_term": self.theta1_term,
            "theta2_term": self.theta2_term,
            "k": self.k,
            "bregman": self.bregman,
            "positive_part": self.positive_part,
            "residual": self.residual,
        }
