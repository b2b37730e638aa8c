"""
Unit Tests for Quadrature Helpers

Tests the adaptive wrapper and Stieltjes sums with Richardson refinement.
"""

import math
from fractions import Fraction

import pytest

from funcval.core.errors import QuadratureNotConverged
from funcval.utils.quadrature import adaptive_quad, stieltjes_richardson


class TestAdaptiveQuad:
    """Test adaptive_quad"""

    def test_polynomial(self):
        result = adaptive_quad(lambda x: x * x, 0.0, 3.0)
        assert result.value == pytest.approx(9.0, rel=1e-12)
        assert result.error >= 0

    def test_kink_breakpoints(self):
        """Test a tent integrates exactly with its kink as a breakpoint"""
        result = adaptive_quad(lambda x: max(0.0, 1 - abs(x)), -1.0, 1.0, points=[0.0])
        assert result.value == pytest.approx(1.0, rel=1e-12)

    def test_empty_interval(self):
        assert adaptive_quad(math.exp, 1.0, 1.0).value == 0.0

    def test_divergent_integrand_raises(self):
        """Test integration warnings surface as QuadratureNotConverged"""
        with pytest.raises(QuadratureNotConverged):
            adaptive_quad(lambda x: 1.0 / x, 0.0, 1.0, limit=5)


class TestStieltjes:
    """Test stieltjes_richardson on polynomial profiles"""

    def test_exponential_against_quadratic_profile(self):
        """Test int_0^1 e^-t d(2t^2) = 4(1 - 2/e)"""
        result = stieltjes_richardson(
            lambda t: math.exp(-t), lambda t: 2 * t * t, Fraction(0), Fraction(1),
        )
        assert result.value == pytest.approx(4 * (1 - 2 / math.e), rel=1e-8)

    def test_linear_profile_reduces_to_riemann(self):
        result = stieltjes_richardson(lambda t: t, lambda t: 3 * t, Fraction(0), Fraction(2))
        assert result.value == pytest.approx(6.0, rel=1e-10)

    def test_refinement_cap(self):
        """Test an unsettled sum raises instead of returning a poor value"""
        with pytest.raises(QuadratureNotConverged):
            stieltjes_richardson(
                lambda t: math.sin(1.0 / max(t, 1e-9)), lambda t: t, Fraction(0), Fraction(1),
                tol=1e-14, max_refinements=2,
            )
