"""Tests for almost worst case density certificates and the penalised gap."""

import math

import numpy as np
import pytest

from divrisk.catalog import burg_two_r, kl_two_point
from divrisk.errors import DimensionError, DomainError
from divrisk.functionals import bregman_distance, family_density, h_value
from divrisk.integrands import IntegrandSpec
from divrisk.scenario import expectation, total_mass
from divrisk.solver import WorstCaseSolver, certify_awcd, penalised_gap


@pytest.fixture(scope="module")
def kl_solver():
    return WorstCaseSolver(IntegrandSpec.f_divergence("kl"), kl_two_point())


@pytest.fixture(scope="module")
def burg_solver():
    return WorstCaseSolver(IntegrandSpec.f_divergence("burg"), burg_two_r())


def _mixtures(solver, k, count, seed):
    """Renormalised mixtures of q_hat_k with p0 and their measured (epsilon, gamma)."""
    rng = np.random.default_rng(seed)
    space = solver.space
    report = solver.value_at_k(k)
    for t in rng.uniform(0.01, 1.0, count):
        p = (1.0 - t) * report.localiser + t * space.default_density
        p = p / total_mass(space, p)
        gamma = max(h_value(solver.spec, space, p) - k, 0.0)
        epsilon = max(expectation(space, p) - report.v, 0.0)
        yield p, epsilon, gamma


# ============================================================================
# certify_awcd
# ============================================================================

class TestCertifyAwcd:
    def test_burg_default_density(self, burg_solver):
        ones = np.ones(burg_solver.space.size)
        cert = burg_solver.certify_awcd(ones, 1.0, 0.45, 0.0)
        assert cert.is_awcd
        assert abs(cert.bregman_to_localiser - 0.987793) < 1e-4
        assert abs(cert.bound - 0.45 * math.exp(1.5)) < 1e-4
        assert cert.bound_holds
        assert cert.h_p == 0.0

    def test_localiser_is_its_own_centre(self, kl_solver):
        report = kl_solver.value_at_k(0.2)
        cert = kl_solver.certify_awcd(report.localiser, 0.2, 1e-6, 1e-6)
        assert cert.is_awcd
        assert abs(cert.bregman_to_localiser) < 1e-14
        assert cert.bound_holds

    def test_outside_ball_is_not_awcd(self, kl_solver):
        cert = kl_solver.certify_awcd([1.9, 0.1], 0.1, 0.0, 0.0)
        assert cert.h_p > 0.1
        assert cert.is_awcd is False

    @pytest.mark.parametrize("solver_name,k", [("kl", 0.2), ("burg", 0.1), ("burg", 1.0)])
    def test_random_awcds_inside_ball(self, kl_solver, burg_solver, solver_name, k):
        solver = kl_solver if solver_name == "kl" else burg_solver
        for p, epsilon, gamma in _mixtures(solver, k, 100, seed=int(k * 1000)):
            cert = solver.certify_awcd(p, k, epsilon, gamma)
            assert cert.is_awcd
            assert cert.bregman_to_localiser <= cert.bound + 1e-9
            assert cert.bound_holds

    def test_report_lines(self, burg_solver):
        cert = burg_solver.certify_awcd(np.ones(burg_solver.space.size), 1.0, 0.45, 0.0)
        lines = cert.to_lines()
        assert "is_awcd=true" in lines
        assert "bound_holds=true" in lines

    def test_wrapper(self):
        # V(0.2) = 0.19483, so p0 (expectation 1/2) needs epsilon >= 0.30517
        cert = certify_awcd(IntegrandSpec.f_divergence("kl"), kl_two_point(), [1.0, 1.0], 0.2, 0.31, 0.0)
        assert cert.is_awcd
        assert cert.bound_holds

    def test_default_density_just_outside_epsilon(self):
        cert = certify_awcd(IntegrandSpec.f_divergence("kl"), kl_two_point(), [1.0, 1.0], 0.2, 0.3, 0.0)
        assert abs(cert.v - 0.1948272) < 1e-6
        assert cert.expectation_p == 0.5
        assert cert.is_awcd is False
        assert cert.bound_holds is True


class TestCertifyErrors:
    def test_not_a_density(self, kl_solver):
        with pytest.raises(DomainError):
            kl_solver.certify_awcd([2.0, 2.0], 0.2, 0.1, 0.0)

    def test_negative_entry(self, kl_solver):
        with pytest.raises(DomainError):
            kl_solver.certify_awcd([2.5, -0.5], 0.2, 0.1, 0.0)

    def test_wrong_length(self, kl_solver):
        with pytest.raises(DimensionError):
            kl_solver.certify_awcd([1.0], 0.2, 0.1, 0.0)

    def test_negative_tolerances(self, kl_solver):
        with pytest.raises(DomainError):
            kl_solver.certify_awcd([1.0, 1.0], 0.2, -0.1, 0.0)
        with pytest.raises(DomainError):
            kl_solver.certify_awcd([1.0, 1.0], 0.2, 0.0, math.nan)

    def test_trivial_thresholds(self, kl_solver):
        with pytest.raises(DomainError):
            kl_solver.certify_awcd([1.0, 1.0], 0.0, 0.1, 0.0)
        with pytest.raises(DomainError):
            kl_solver.certify_awcd([1.0, 1.0], 1.0, 0.1, 0.0)


# ============================================================================
# penalised_gap
# ============================================================================

class TestPenalisedGap:
    def test_burg_default_density(self, burg_solver):
        space = burg_solver.space
        ones = np.ones(space.size)
        assert abs(burg_solver.penalised_gap(ones, 0.25)) < 1e-6
        ge = burg_solver.solve_inner(-4.0)
        q = family_density(burg_solver.spec, space, (ge.theta1_star, ge.theta2))
        lam_b = 0.25 * bregman_distance(burg_solver.spec, space, ones, q)
        assert abs(lam_b - 0.25 * (13.0 / 6.0 - math.log(4.0))) < 1e-5

    def test_zero_at_family_member(self, kl_solver):
        ge = kl_solver.solve_inner(-1.0)
        q = family_density(kl_solver.spec, kl_solver.space, (ge.theta1_star, ge.theta2))
        assert abs(kl_solver.penalised_gap(q, 1.0)) < 1e-12

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_nonnegative_squared(self, lam):
        space = kl_two_point()
        solver = WorstCaseSolver(IntegrandSpec.f_divergence("squared"), space)
        rng = np.random.default_rng(31)
        for a in rng.uniform(0.0, 1.0, 100):
            p = np.array([2.0 * a, 2.0 * (1.0 - a)])
            assert solver.penalised_gap(p, lam) >= -1e-9

    def test_nonpositive_lambda(self, kl_solver):
        with pytest.raises(DomainError):
            kl_solver.penalised_gap([1.0, 1.0], 0.0)

    def test_infinite_h(self):
        solver = WorstCaseSolver(IntegrandSpec.f_divergence("burg"), kl_two_point())
        with pytest.raises(DomainError):
            solver.penalised_gap([2.0, 0.0], 1.0)

    def test_wrapper(self):
        gap = penalised_gap(IntegrandSpec.f_divergence("kl"), kl_two_point(), [1.5, 0.5], 1.0)
        assert gap >= -1e-12
