"""Tests for divrisk.roots: bracketed roots and golden-section maximisation."""

import math

import pytest

from divrisk.errors import ConvergenceError
from divrisk.roots import bracket_maximum_negative, find_root, golden_section_max


class TestFindRoot:
    def test_sqrt_two(self):
        assert abs(find_root(lambda x: x * x - 2.0, 0.0, 2.0) - math.sqrt(2.0)) < 1e-12

    def test_root_at_endpoint(self):
        assert find_root(lambda x: x - 1.0, 1.0, 3.0) == 1.0
        assert find_root(lambda x: x - 3.0, 1.0, 3.0) == 3.0

    def test_decreasing_function(self):
        assert abs(find_root(lambda x: math.exp(-x) - 0.5, 0.0, 5.0) - math.log(2.0)) < 1e-12

    def test_not_bracketed(self):
        with pytest.raises(ConvergenceError, match="not bracketed"):
            find_root(lambda x: x * x + 1.0, -1.0, 1.0)

    def test_infinite_endpoint(self):
        with pytest.raises(ConvergenceError):
            find_root(lambda x: math.inf if x > 0 else -1.0, -1.0, 1.0)


class TestBracketMaximumNegative:
    def test_maximum_to_the_left(self):
        fn = lambda x: -(x + 3.0) ** 2
        a, b, c = bracket_maximum_negative(fn)
        assert a < b < c < 0
        assert fn(b) >= max(fn(a), fn(c))
        assert a <= -3.0 <= c

    def test_maximum_near_zero(self):
        fn = lambda x: -(x + 0.01) ** 2
        a, b, c = bracket_maximum_negative(fn)
        assert a < b < c < 0
        assert fn(b) >= max(fn(a), fn(c))
        assert a <= -0.01 <= c

    def test_still_rising_toward_zero(self):
        with pytest.raises(ConvergenceError, match="still rising"):
            bracket_maximum_negative(lambda x: x)

    def test_still_rising_to_the_left(self):
        with pytest.raises(ConvergenceError):
            bracket_maximum_negative(lambda x: -x)

    def test_start_must_be_negative(self):
        with pytest.raises(ValueError):
            bracket_maximum_negative(lambda x: x, start=0.0)


class TestGoldenSectionMax:
    def test_parabola(self):
        x, fx = golden_section_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0)
        assert abs(x - 0.3) < 1e-7
        assert fx <= 0.0

    def test_endpoints_in_any_order(self):
        x, _ = golden_section_max(lambda t: -(t + 2.0) ** 2, -1.0, -4.0)
        assert abs(x + 2.0) < 1e-7

    def test_kinked_objective(self):
        x, fx = golden_section_max(lambda t: -abs(t + 0.75), -2.0, -0.1)
        assert abs(x + 0.75) < 1e-8
        assert fx == pytest.approx(0.0, abs=1e-8)

    def test_follows_bracket(self):
        fn = lambda t: t - math.exp(t + 1.0)  # maximum at t = -1
        a, _, c = bracket_maximum_negative(fn)
        x, _ = golden_section_max(fn, a, c)
        assert abs(x + 1.0) < 1e-6
