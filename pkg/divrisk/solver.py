"""
Worst case solver over a divergence ball.

For an integrand beta and a scenario space the solver evaluates

    G(theta2)  = min_theta1 [K(theta1, theta2) - theta1]       (dual curve)
    V(k)       = max_{theta2 < 0} (k + G(theta2)) / theta2      (worst case value)
    W(lam)     = -lam * G(-1/lam)                               (penalised value)
    F(b)       = sup_{theta2 <= 0} [theta2 * b - G(theta2)]     (inverse of V)
    k_max      = lim_{b -> m} F(b)

together with the worst case localiser q_hat_k, the existence regime of
worst case densities across k, and Bregman-ball certificates for almost
worst case densities.

Inner minimisation solves mass(theta1) = 1 on a geometrically grown
bracket. The bracket stops at theta1_upper, the edge of dom K: the strict
atom bound min_i (beta'(r_i, +inf) - theta2 x_i) or the non-strict bound
from the closure points, whichever is smaller. Below a closure bound the
mass stays finite and may never reach 1 (BOUNDARY case); below an atom
bound it diverges.

Example:
    >>> from divrisk.catalog import burg_two_r
    >>> solver = WorstCaseSolver(IntegrandSpec.f_divergence("burg"), burg_two_r())
    >>> round(solver.value_at_k(1.0).v, 6)
    0.22313
"""

from __future__ import annotations

import dataclasses
import logging
import math
import time
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import SolverConfig
from .errors import ConvergenceError, DomainError, ValidationError
from .functionals import (
    bregman_distance,
    check_compatible,
    family_density,
    h_value,
    k_value,
)
from .integrands import IntegrandSpec
from .roots import bracket_maximum_negative, find_root, golden_section_max
from .scenario import ScenarioSpace, as_density_vector, expectation, is_density
from .trace_logger import get_trace_logger
from .types import (
    AwcdCertificate,
    ClassifyReport,
    GEval,
    InnerCase,
    Regime,
    TrivialBranch,
    WorstCaseReport,
)

logger = logging.getLogger(__name__)

INF = float("inf")


class WorstCaseSolver:
    """Dual-curve solver bound to one integrand and one scenario space.

    The solver memoises G evaluations, k_max, the classification and
    worst case reports; it is cheap to keep one per (spec, space) pair.

    Args:
        spec: Integrand; Bregman integrands must be bound to ``space``
        space: Validated scenario space
        config: Tolerances and grid constants (defaults if omitted)

    Raises:
        ValidationError: an f-divergence integrand over a space whose
            default density is not identically 1 (H(p0) would not vanish)
    """

    def __init__(
        self,
        spec: IntegrandSpec,
        space: ScenarioSpace,
        config: Optional[SolverConfig] = None,
    ):
        check_compatible(spec, space)
        self.spec = spec
        self.space = space
        self.config = config or SolverConfig()

        if spec.is_autonomous and np.any(
            np.abs(space.default_density - 1.0) > self.config.density_tol
        ):
            raise ValidationError(
                "f-divergence integrands need p0 = 1 at every atom (mu is the default "
                "measure); use a Bregman integrand for a non-uniform default density"
            )

        _, atom_upper = spec.deriv_limits()
        self._atom_upper = np.broadcast_to(atom_upper, space.payoffs.shape)
        _, closure_upper = spec.closure_limits()
        self._closure_upper = np.broadcast_to(closure_upper, space.closure_payoffs.shape)

        self._g_cache: Dict[float, GEval] = {}
        self._reports: Dict[float, WorstCaseReport] = {}
        self._k_max: Optional[float] = None
        self._classification: Optional[ClassifyReport] = None

    # ------------------------------------------------------------------
    # Inner problem
    # ------------------------------------------------------------------

    def _mass(self, theta1: float, theta2: float) -> float:
        q = self.spec.conjugate_deriv(theta1 + theta2 * self.space.payoffs)
        if np.isposinf(q).any():
            return INF
        return float(np.sum(self.space.weights * q))

    def theta1_bounds(self, theta2: float) -> Tuple[float, float]:
        """(strict atom bound, non-strict closure bound) on theta1 at ``theta2``."""
        with np.errstate(invalid="ignore"):
            atom = self._atom_upper - theta2 * self.space.payoffs
            atom_bound = float(np.min(atom)) if atom.size else INF
            closure = self._closure_upper - theta2 * self.space.closure_payoffs
            closure_bound = float(np.min(closure)) if closure.size else INF
        return atom_bound, closure_bound

    def _finite_upper(self, residual, lo: float, hi: float) -> float:
        # Pull hi back toward lo until the residual is finite (overflowing exp).
        for _ in range(self.config.max_iter):
            r = residual(hi)
            if math.isfinite(r):
                return hi
            hi = 0.5 * (lo + hi) if lo < hi else hi - 1.0
        raise ConvergenceError(f"mass stays infinite below theta1={hi!r}")

    def solve_inner(self, theta2: float) -> GEval:
        """Minimise K(theta1, theta2) - theta1 over theta1.

        Returns:
            GEval with case INTERIOR (mass 1) or BOUNDARY (theta1 pinned at the
            closure bound with mass < 1)

        Raises:
            DomainError: theta2 outside Theta2
            ConvergenceError: bracket not found within ``max_expand`` steps
        """
        theta2 = float(theta2)
        cached = self._g_cache.get(theta2)
        if cached is not None:
            return cached
        if not math.isfinite(theta2):
            raise DomainError(f"theta2 must be finite, got {theta2!r}")

        cfg = self.config
        atom_bound, closure_bound = self.theta1_bounds(theta2)
        if math.isnan(atom_bound) or math.isnan(closure_bound) or min(atom_bound, closure_bound) == -INF:
            raise DomainError(f"theta2={theta2!r} is outside Theta2: K = +inf for every theta1")

        def residual(theta1: float) -> float:
            return self._mass(theta1, theta2) - 1.0

        expansions = 0
        theta1: Optional[float] = None
        case = InnerCase.INTERIOR

        if closure_bound < atom_bound:
            # non-strict bound: the mass is finite at the edge itself
            hi = closure_bound
            r_hi = residual(hi)
            if r_hi < -cfg.tol_mass:
                theta1, case = hi, InnerCase.BOUNDARY
            elif r_hi <= cfg.tol_mass:
                theta1 = hi
        elif math.isfinite(atom_bound):
            # strict bound: the mass diverges as theta1 approaches it
            upper = atom_bound
            below = float(np.nextafter(upper, -INF))
            gap = 1.0
            for expansions in range(1, cfg.max_expand + 1):
                hi = min(upper - gap, below)
                if residual(hi) >= 0:
                    break
                if hi == below:
                    raise ConvergenceError(
                        f"mass stays below 1 up to theta1_upper={upper!r} at theta2={theta2!r}"
                    )
                gap /= cfg.expand_factor
            else:
                raise ConvergenceError(f"upper bracket not found at theta2={theta2!r}")
        else:
            hi, step = 1.0, 1.0
            for expansions in range(1, cfg.max_expand + 1):
                if residual(hi) >= 0:
                    break
                hi += step
                step *= cfg.expand_factor
            else:
                raise ConvergenceError(f"upper bracket not found at theta2={theta2!r}")

        if theta1 is None:
            lo, step = min(-1.0, hi - 1.0), 1.0
            for _ in range(cfg.max_expand):
                if residual(lo) < 0:
                    break
                lo -= step
                step *= cfg.expand_factor
                expansions += 1
            else:
                raise ConvergenceError(f"lower bracket not found at theta2={theta2!r}")
            hi = self._finite_upper(residual, lo, hi)
            theta1 = find_root(residual, lo, hi, xtol=1e-15, max_iter=cfg.max_iter)

        q = self.spec.conjugate_deriv(theta1 + theta2 * self.space.payoffs)
        mass = float(np.sum(self.space.weights * q))
        moment = float(np.sum(self.space.weights * q * self.space.payoffs))
        if case is InnerCase.INTERIOR and abs(mass - 1.0) > cfg.tol_mass:
            logger.warning(
                "[SOLVER] inner root at theta2=%.10g has mass %.15g (tolerance %g)",
                theta2, mass, cfg.tol_mass,
            )
        k = k_value(self.spec, self.space, (theta1, theta2))
        if not math.isfinite(k):
            raise DomainError(f"K is infinite at the inner minimiser for theta2={theta2!r}")

        result = GEval(
            theta2=theta2,
            g_value=k - theta1,
            theta1_star=float(theta1),
            case=case,
            mass=mass,
            payoff_moment=moment,
        )
        self._g_cache[theta2] = result
        get_trace_logger().log_inner_solve(theta2, result.theta1_star, case.value, mass, expansions)
        return result

    def g(self, theta2: float) -> float:
        """G(theta2)."""
        return self.solve_inner(theta2).g_value

    def g_curve(self, thetas: Sequence[float]) -> List[GEval]:
        """solve_inner over ``thetas`` in the given order."""
        return [self.solve_inner(t) for t in thetas]

    # ------------------------------------------------------------------
    # Outer problems
    # ------------------------------------------------------------------

    def _maximise(self, fn, purpose: str) -> Tuple[float, float]:
        cfg = self.config
        a, b, c = bracket_maximum_negative(
            fn, start=-1.0, factor=cfg.expand_factor, max_expand=cfg.max_expand
        )
        get_trace_logger().log_bracket(purpose, a, b, c)
        return golden_section_max(fn, a, c, rel_tol=cfg.tol_theta2, max_iter=cfg.max_iter)

    def _f_sup(self, b: float) -> float:
        return self._maximise(lambda t: t * b - self.g(t), "F")[1]

    def f_of_b(self, b: float) -> float:
        """F(b) = sup_{theta2 <= 0} [theta2 b - G(theta2)] for m <= b <= b0.

        F(b0) = 0 and F(m) is the k_max estimate.

        Raises:
            DomainError: b outside [m, b0]
        """
        b = float(b)
        m, b0 = self.space.m, self.space.b0
        slack = 1e-12 * max(1.0, abs(m), abs(b0))
        if math.isnan(b) or b < m - slack or b > b0 + slack:
            raise DomainError(f"F(b) needs m <= b <= b0, got b={b!r} with m={m!r}, b0={b0!r}")
        if b >= b0:
            return 0.0
        if b <= m:
            return self.k_max_estimate()
        return self._f_sup(b)

    def f_curve(self, bs: Sequence[float]) -> List[Tuple[float, float]]:
        return [(float(b), self.f_of_b(b)) for b in bs]

    def k_max_estimate(self) -> float:
        """lim_{b -> m} F(b), or +inf when F(m + delta_j) does not settle.

        Evaluates F at m + (b0 - m) 2^-j for j = 1..kmax_steps and accepts
        the last value when its relative change from the previous one is
        below ``kmax_rel_tol``.
        """
        if self._k_max is not None:
            return self._k_max

        cfg = self.config
        m, b0 = self.space.m, self.space.b0
        values: Dict[int, float] = {}
        for j in range(1, cfg.kmax_steps + 1):
            b = m + (b0 - m) * 2.0 ** (-j)
            if b <= m:
                break
            values[j] = self._f_sup(b)

        k_max = INF
        steps = sorted(values)
        if len(steps) >= 2:
            last, prev = values[steps[-1]], values[steps[-2]]
            if math.isfinite(last) and abs(last - prev) < cfg.kmax_rel_tol * max(abs(last), 1e-300):
                k_max = last

        logger.debug("[SOLVER] k_max estimate %.12g from %d steps", k_max, len(steps))
        get_trace_logger().log_kmax(k_max, values)
        self._k_max = k_max
        return k_max

    def penalised_value(self, lam: float) -> float:
        """W(lam) = -lam * G(-1/lam).

        Raises:
            DomainError: lam <= 0 or -1/lam outside Theta2
        """
        lam = float(lam)
        if not (lam > 0 and math.isfinite(lam)):
            raise DomainError(f"lambda must be positive and finite, got {lam!r}")
        return -lam * self.g(-1.0 / lam)

    def w_curve(self, lambdas: Sequence[float]) -> List[Tuple[float, float, GEval]]:
        """(lambda, W(lambda), G evaluation at -1/lambda) for each lambda."""
        rows = []
        for lam in lambdas:
            w = self.penalised_value(lam)
            rows.append((float(lam), w, self.solve_inner(-1.0 / float(lam))))
        return rows

    def value_at_k(self, k: float) -> WorstCaseReport:
        """V(k) with its localiser q_hat_k.

        k = 0 gives V = b0 and k >= k_max gives V = m without optimisation
        (no localiser is emitted in the latter case).

        Raises:
            DomainError: k < 0 or NaN
            ConvergenceError: the supporting-line search did not bracket
        """
        k = float(k)
        if math.isnan(k) or k < 0:
            raise DomainError(f"k must be >= 0, got {k!r}")
        cached = self._reports.get(k)
        if cached is not None:
            return cached

        start = time.perf_counter()
        k_max = self.k_max_estimate()
        space = self.space

        if k == 0.0:
            ge = self.solve_inner(0.0)
            q = family_density(self.spec, space, (ge.theta1_star, 0.0))
            report = WorstCaseReport(
                k=0.0,
                v=space.b0,
                theta2_star=0.0,
                theta1_star=ge.theta1_star,
                localiser=q,
                localiser_mass=ge.mass,
                is_density=True,
                is_wcd=True,
                trivial_branch=TrivialBranch.K_ZERO,
                k_max=k_max,
                h_localiser=h_value(self.spec, space, q),
                payoff_moment=ge.payoff_moment,
            )
        elif k >= k_max:
            report = WorstCaseReport(
                k=k,
                v=space.m,
                theta2_star=-INF,
                theta1_star=math.nan,
                localiser=np.zeros(0),
                localiser_mass=0.0,
                is_density=False,
                is_wcd=False,
                trivial_branch=TrivialBranch.K_GE_KMAX,
                k_max=k_max,
            )
        else:
            theta2, v = self._maximise(lambda t: (k + self.g(t)) / t, "V")
            ge = self.solve_inner(theta2)
            q = family_density(self.spec, space, (ge.theta1_star, theta2))
            density = abs(ge.mass - 1.0) <= self.config.tol_mass
            report = WorstCaseReport(
                k=k,
                v=v,
                theta2_star=theta2,
                theta1_star=ge.theta1_star,
                localiser=q,
                localiser_mass=ge.mass,
                is_density=density,
                is_wcd=density and not self._beyond_critical(k),
                k_max=k_max,
                h_localiser=h_value(self.spec, space, q),
                payoff_moment=ge.payoff_moment,
            )
            b = min(max(v, space.m), space.b0)
            report.consistency_gap = abs(self.f_of_b(b) - k)
            if report.consistency_gap > self.config.consistency_tol:
                logger.warning(
                    "[SOLVER] F(V(k)) differs from k=%.9g by %.3g", k, report.consistency_gap
                )

        elapsed = time.perf_counter() - start
        logger.debug("[SOLVER] V(%.9g) = %.12g (%s)", k, report.v, report.trivial_branch.value)
        get_trace_logger().log_value_report(
            k, report.v, report.theta2_star, report.localiser_mass,
            report.trivial_branch.value, elapsed,
        )
        self._reports[k] = report
        return report

    def _beyond_critical(self, k: float) -> bool:
        if not self.spec.is_autonomous or self.spec.cofinite:
            return False
        k_critical = self.classify().k_critical
        return k_critical is not None and k > k_critical

    # ------------------------------------------------------------------
    # Existence classification
    # ------------------------------------------------------------------

    def probe_thetas(self) -> np.ndarray:
        """Log-spaced probe grid on [-2^probe_max_exp, -2^probe_min_exp], ascending."""
        cfg = self.config
        grid = -np.logspace(cfg.probe_min_exp, cfg.probe_max_exp, cfg.probe_count, base=2.0)
        return np.sort(grid)

    def classify(self, k_probe: Optional[float] = None) -> ClassifyReport:
        """Worst case density existence regime across k.

        Cofinite generators always admit a worst case density. Autonomous
        non-cofinite integrands get the critical threshold from the density
        condition g(theta2) = 1 on the payoff shifted to m = 0. Other
        integrands are classified from the probe grid (evidential verdict).

        Args:
            k_probe: Optional threshold at which to also report WCD existence
        """
        if self._classification is None:
            start = time.perf_counter()
            if self.spec.cofinite:
                report = ClassifyReport(regime=Regime.ALWAYS_WCD, theta_min=-INF)
            elif self.spec.is_autonomous:
                report = self._classify_autonomous()
            else:
                report = self._classify_by_probes()
            logger.info(
                "[SOLVER] classified %s: %s k_critical=%s (%.3fs)",
                self.spec.describe(), report.regime.value, report.k_critical,
                time.perf_counter() - start,
            )
            get_trace_logger().log_classification(
                report.regime.value, report.k_critical, report.theta_tilde_min,
                len(report.probe_grid), report.probe_boundary_count,
            )
            self._classification = report

        if k_probe is None:
            return self._classification
        return dataclasses.replace(
            self._classification,
            k_probe=float(k_probe),
            wcd_at_probe=self.value_at_k(k_probe).is_wcd,
        )

    def _critical_from(self, theta_tilde: float) -> float:
        if theta_tilde == 0.0:
            return 0.0
        ge = self.solve_inner(theta_tilde)
        # G'_+ is the payoff moment of q_theta2 (envelope of K in theta2)
        return theta_tilde * ge.payoff_moment - ge.g_value

    def _classify_autonomous(self) -> ClassifyReport:
        space = self.space
        shifted = space.payoffs - space.m
        c = self.spec.c
        gen = self.spec.gen

        def density_mass(theta2: float) -> float:
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                q = gen.conjugate_deriv(c + theta2 * shifted)
            if np.isposinf(q).any():
                return INF
            return float(np.sum(space.weights * q))

        probes = self.probe_thetas()
        values = [density_mass(t) for t in probes]
        grid = [(float(t), float(v)) for t, v in zip(probes, values)]

        if all(math.isinf(v) for v in values):
            # an atom sits at m: theta1 = c is never reached with finite mass
            return ClassifyReport(regime=Regime.ALWAYS_WCD, theta_min=-INF, probe_grid=grid)

        sigma = 0.0
        if values[-1] < 1.0:
            theta_tilde = sigma
        else:
            theta_tilde = self._density_root(probes, values, density_mass)

        k_critical = self._critical_from(theta_tilde)
        regime = Regime.CRITICAL if k_critical > 0 else Regime.NEVER_WCD_OBSERVED
        return ClassifyReport(
            regime=regime,
            k_critical=k_critical,
            theta_tilde_min=theta_tilde,
            theta_min=-INF,
            sigma=sigma,
            probe_grid=grid,
        )

    def _density_root(self, probes, values, density_mass) -> float:
        """theta2 solving density_mass(theta2) = 1, given values[-1] >= 1."""
        cfg = self.config
        if values[-1] == 1.0:
            return float(probes[-1])
        if values[0] > 1.0:
            hi = float(probes[0])
            for _ in range(cfg.max_expand):
                lo = hi * cfg.expand_factor
                if density_mass(lo) <= 1.0:
                    break
                hi = lo
            else:
                raise ConvergenceError("density condition g(theta2) = 1 not bracketed")
            return find_root(lambda t: density_mass(t) - 1.0, lo, hi, max_iter=cfg.max_iter)
        j = max(i for i, v in enumerate(values) if v <= 1.0)
        if values[j] == 1.0:
            return float(probes[j])
        return find_root(
            lambda t: density_mass(t) - 1.0, float(probes[j]), float(probes[j + 1]),
            max_iter=cfg.max_iter,
        )

    def _classify_by_probes(self) -> ClassifyReport:
        cfg = self.config
        probes = [float(t) for t in self.probe_thetas()]
        cases: List[Optional[InnerCase]] = []
        grid: List[Tuple[float, float]] = []
        for t in probes:
            try:
                ge = self.solve_inner(t)
            except DomainError:
                cases.append(None)
                grid.append((t, math.nan))
                continue
            cases.append(ge.case)
            grid.append((t, ge.mass))

        valid = [i for i, case in enumerate(cases) if case is not None]
        if not valid:
            raise DomainError("no probe theta2 lies in Theta2")
        theta_min = -INF if len(valid) == len(probes) else probes[valid[0]]
        boundary = [cases[i] is InnerCase.BOUNDARY for i in valid]

        if all(boundary):
            return ClassifyReport(
                regime=Regime.NEVER_WCD_OBSERVED, theta_min=theta_min,
                probe_grid=grid, evidential=True,
            )

        if not any(boundary):
            if math.isfinite(theta_min):
                k_critical = self._critical_from(theta_min)
                if math.isfinite(k_critical) and k_critical > 0:
                    return ClassifyReport(
                        regime=Regime.CRITICAL, k_critical=k_critical,
                        theta_tilde_min=theta_min, theta_min=theta_min,
                        probe_grid=grid, evidential=True,
                    )
            return ClassifyReport(
                regime=Regime.ALWAYS_WCD, theta_min=theta_min,
                probe_grid=grid, evidential=True,
            )

        # rightmost switch between neighbouring valid probes
        pairs = [(valid[n], valid[n + 1]) for n in range(len(valid) - 1)
                 if cases[valid[n]] is not cases[valid[n + 1]]]
        i, j = pairs[-1]
        lo, hi = probes[i], probes[j]
        case_lo = cases[i]
        for _ in range(cfg.max_iter):
            if hi - lo <= cfg.tol_theta2 * max(abs(lo), abs(hi)):
                break
            mid = 0.5 * (lo + hi)
            if self.solve_inner(mid).case is case_lo:
                lo = mid
            else:
                hi = mid
        theta_tilde = 0.5 * (lo + hi)
        k_critical = self._critical_from(theta_tilde)
        regime = Regime.CRITICAL if k_critical > 0 else Regime.NEVER_WCD_OBSERVED
        return ClassifyReport(
            regime=regime,
            k_critical=k_critical,
            theta_tilde_min=theta_tilde,
            theta_min=theta_min,
            probe_grid=grid,
            evidential=True,
        )

    # ------------------------------------------------------------------
    # Certificates
    # ------------------------------------------------------------------

    def _require_density(self, p) -> np.ndarray:
        p = as_density_vector(self.space, p)
        if not is_density(self.space, p, self.config.density_tol):
            raise DomainError("p must be a density (nonnegative with total mass 1)")
        return p

    def certify_awcd(self, p, k: float, epsilon: float, gamma: float) -> AwcdCertificate:
        """Check whether p is an (epsilon, gamma)-almost worst case density
        and bound its Bregman distance to the localiser q_hat_k.

        Raises:
            DomainError: p not a density, negative epsilon/gamma, or k
                outside (0, k_max)
        """
        epsilon, gamma = float(epsilon), float(gamma)
        if not (epsilon >= 0 and gamma >= 0):
            raise DomainError("epsilon and gamma must be >= 0")
        p = self._require_density(p)
        report = self.value_at_k(k)
        if report.trivial_branch is not TrivialBranch.NONE:
            raise DomainError(f"certification needs 0 < k < k_max (k_max={report.k_max!r})")

        slack = self.config.bound_slack
        h = h_value(self.spec, self.space, p)
        e = expectation(self.space, p)
        is_awcd = h <= report.k + gamma + slack and e <= report.v + epsilon + slack
        distance = bregman_distance(self.spec, self.space, p, report.localiser)
        bound = gamma - report.theta2_star * epsilon
        holds = distance <= bound + slack

        cert = AwcdCertificate(
            epsilon=epsilon,
            gamma=gamma,
            is_awcd=bool(is_awcd),
            bregman_to_localiser=distance,
            bound=bound,
            bound_holds=bool(holds),
            k=report.k,
            v=report.v,
            theta2_star=report.theta2_star,
            h_p=h,
            expectation_p=e,
        )
        if cert.is_awcd and not cert.bound_holds:
            logger.warning(
                "[SOLVER] AWCD bound violated: B=%.12g > bound=%.12g", distance, bound
            )
        get_trace_logger().log_certificate(cert.is_awcd, distance, bound, cert.bound_holds)
        return cert

    def penalised_gap(self, p, lam: float) -> float:
        """[E(p) + lam H(p)] - [W(lam) + lam B(p, q_{-1/lam})], nonnegative up to rounding.

        Raises:
            DomainError: lam <= 0, p not a density, or H(p) infinite
        """
        lam = float(lam)
        if not (lam > 0 and math.isfinite(lam)):
            raise DomainError(f"lambda must be positive and finite, got {lam!r}")
        p = self._require_density(p)
        h = h_value(self.spec, self.space, p)
        if not math.isfinite(h):
            raise DomainError("penalised gap needs H(p) finite")
        ge = self.solve_inner(-1.0 / lam)
        q = family_density(self.spec, self.space, (ge.theta1_star, ge.theta2))
        w = -lam * ge.g_value
        distance = bregman_distance(self.spec, self.space, p, q)
        return (expectation(self.space, p) + lam * h) - (w + lam * distance)


# ---------------------------------------------------------------------------
# Functional interface
# ---------------------------------------------------------------------------

def solve_inner(spec: IntegrandSpec, space: ScenarioSpace, theta2: float,
                config: Optional[SolverConfig] = None) -> GEval:
    return WorstCaseSolver(spec, space, config).solve_inner(theta2)


def value_at_k(spec: IntegrandSpec, space: ScenarioSpace, k: float,
               config: Optional[SolverConfig] = None) -> WorstCaseReport:
    return WorstCaseSolver(spec, space, config).value_at_k(k)


def penalised_value(spec: IntegrandSpec, space: ScenarioSpace, lam: float,
                    config: Optional[SolverConfig] = None) -> float:
    return WorstCaseSolver(spec, space, config).penalised_value(lam)


def f_of_b(spec: IntegrandSpec, space: ScenarioSpace, b: float,
           config: Optional[SolverConfig] = None) -> float:
    return WorstCaseSolver(spec, space, config).f_of_b(b)


def k_max_estimate(spec: IntegrandSpec, space: ScenarioSpace,
                   config: Optional[SolverConfig] = None) -> float:
    return WorstCaseSolver(spec, space, config).k_max_estimate()


def classify(spec: IntegrandSpec, space: ScenarioSpace, k_probe: Optional[float] = None,
             config: Optional[SolverConfig] = None) -> ClassifyReport:
    return WorstCaseSolver(spec, space, config).classify(k_probe)


def certify_awcd(spec: IntegrandSpec, space: ScenarioSpace, p, k: float, epsilon: float,
                 gamma: float, config: Optional[SolverConfig] = None) -> AwcdCertificate:
    return WorstCaseSolver(spec, space, config).certify_awcd(p, k, epsilon, gamma)


def penalised_gap(spec: IntegrandSpec, space: ScenarioSpace, p, lam: float,
                  config: Optional[SolverConfig] = None) -> float:
    return WorstCaseSolver(spec, space, config).penalised_gap(p, lam)
