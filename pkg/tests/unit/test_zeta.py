"""
Unit Tests for Weight Presets and Growth Functions
"""

import math
from fractions import Fraction

import pytest

from funcval.core.errors import DerivativeUnavailable, ParameterOutOfRange, UnsupportedInput
from funcval.zeta.growth import GrowthFns, moment_reconstruction, psi1, psi1_by_quadrature
from funcval.zeta.presets import (
    ZetaKind,
    ZetaRole,
    ZetaSpec,
    bump,
    exp_decay,
    kinks,
    poly_cutoff,
    support_bound,
    support_end,
    with_role,
    zeta_eval,
    zeta_exact,
)

F = Fraction


class TestPresets:
    """Test weight evaluation"""

    def test_exp(self, exp_zeta):
        assert zeta_eval(exp_zeta, 1.0) == pytest.approx(math.exp(-1))
        assert zeta_eval(exp_zeta, 1.0, 1) == pytest.approx(-math.exp(-1))
        assert zeta_eval(exp_decay(2), 0.5, 2) == pytest.approx(4 * math.exp(-1))

    def test_bump(self, bump_zeta):
        assert zeta_eval(bump_zeta, 0.0) == 1.0
        assert zeta_eval(bump_zeta, 0.5) == pytest.approx(0.5)
        assert zeta_eval(bump_zeta, 2.0) == 0.0
        with pytest.raises(DerivativeUnavailable):
            zeta_eval(bump_zeta, 0.5, 1)

    def test_poly(self, cutoff_zeta):
        assert zeta_eval(cutoff_zeta, 0.5) == pytest.approx(0.125)
        assert zeta_eval(cutoff_zeta, 0.5, 1) == pytest.approx(-0.75)
        assert zeta_eval(cutoff_zeta, 0.5, 3) == pytest.approx(-6.0)
        assert zeta_eval(cutoff_zeta, 1.5) == 0.0
        with pytest.raises(DerivativeUnavailable):
            zeta_eval(cutoff_zeta, 0.5, 4)

    def test_exact_values(self, bump_zeta, cutoff_zeta, exp_zeta):
        assert zeta_exact(bump_zeta, F(1, 2)) == F(1, 2)
        assert zeta_exact(cutoff_zeta, F(1, 2)) == F(1, 8)
        assert zeta_exact(cutoff_zeta, 3) == 0
        with pytest.raises(UnsupportedInput):
            zeta_exact(exp_zeta, 0)

    def test_support(self, bump_zeta, cutoff_zeta, exp_zeta):
        assert kinks(bump_zeta) == (-1, 0, 1)
        assert kinks(exp_zeta) == ()
        assert support_end(exp_zeta) == math.inf
        assert support_end(cutoff_zeta) == 1.0
        assert support_bound(bump_zeta) == 1
        assert support_bound(exp_zeta) is None

    def test_parameter_ranges(self):
        with pytest.raises(ParameterOutOfRange):
            exp_decay(0)
        with pytest.raises(ParameterOutOfRange):
            bump(0, 0, 1)
        with pytest.raises(ParameterOutOfRange):
            poly_cutoff(1, 0)

    def test_zeta2_must_vanish(self):
        """Test exponential decay is refused in the zeta2 slot"""
        with pytest.raises(ParameterOutOfRange):
            exp_decay(1, ZetaRole.ZETA2)
        assert with_role(bump(), ZetaRole.ZETA1).role == ZetaRole.ZETA1

    def test_compact(self, exp_zeta, bump_zeta):
        assert not exp_zeta.compact
        assert bump_zeta.compact
        assert ZetaSpec(ZetaKind.POLY).compact


class TestGrowthFunctions:
    """Test psi_1 and the moment reconstruction"""

    def test_exp_closed_form(self, exp_zeta):
        """Test psi_1(t) = n! e^-t for e^-t"""
        assert psi1(exp_zeta, 2, 0.0) == pytest.approx(2.0)
        assert psi1(exp_zeta, 3, 1.0) == pytest.approx(6 * math.exp(-1))
        assert psi1(exp_zeta, 2, 0.0, 1) == pytest.approx(-2.0)

    def test_poly_against_beta_integral(self):
        """Test 2 int_0^2 r (2 - r)^3 dr = 16/5"""
        assert psi1(poly_cutoff(2, 3), 2, 0.0) == pytest.approx(3.2, rel=1e-9)

    def test_bump(self, bump_zeta):
        assert psi1(bump_zeta, 2, 0.0) == pytest.approx(1 / 3, rel=1e-9)
        assert psi1(bump_zeta, 2, 1.0) == 0.0

    def test_top_derivative(self, cutoff_zeta):
        """Test psi_1^(n) = (-1)^n n! zeta"""
        assert psi1(cutoff_zeta, 2, 0.5, 2) == pytest.approx(2 * 0.125)
        assert psi1(cutoff_zeta, 3, 0.5, 3) == pytest.approx(-6 * 0.125)

    def test_derivative_matches_difference(self):
        zeta = poly_cutoff(2, 4)
        h = 1e-4
        difference = (psi1(zeta, 3, 0.7 + h, 1) - psi1(zeta, 3, 0.7 - h, 1)) / (2 * h)
        assert psi1(zeta, 3, 0.7, 2) == pytest.approx(difference, rel=1e-6)

    def test_derivative_order_bounds(self, exp_zeta):
        with pytest.raises(DerivativeUnavailable):
            psi1(exp_zeta, 2, 0.0, 3)
        with pytest.raises(ParameterOutOfRange):
            psi1(exp_zeta, 0, 0.0)

    def test_quadrature_agrees(self, exp_zeta, bump_zeta):
        assert psi1_by_quadrature(exp_zeta, 2, 0.3) == pytest.approx(psi1(exp_zeta, 2, 0.3), rel=1e-8)
        assert psi1_by_quadrature(bump_zeta, 3, -0.5) == pytest.approx(psi1(bump_zeta, 3, -0.5), rel=1e-8)

    def test_moment_reconstruction(self, exp_zeta):
        """Test the truncated moment integral recovers zeta(t)"""
        assert moment_reconstruction(exp_zeta, 2, 0.5, 40.0) == pytest.approx(math.exp(-0.5), rel=1e-9)
        assert moment_reconstruction(poly_cutoff(2, 3), 2, 0.5, 4.0) == pytest.approx(1.5 ** 3, rel=1e-9)

    def test_moment_reconstruction_needs_derivative(self, bump_zeta):
        with pytest.raises(DerivativeUnavailable):
            moment_reconstruction(bump_zeta, 2, 0.0, 4.0)

    def test_growth_triple(self, exp_zeta, bump_zeta):
        psi = GrowthFns(n=2, zeta0=exp_decay(1, ZetaRole.ZETA0), zeta1=exp_zeta, zeta2=bump_zeta)
        assert psi.psi0(0.0) == 1.0
        assert psi.psi1(0.0) == pytest.approx(2.0)
        assert psi.psi2(2.0) == 0.0
        assert GrowthFns(n=2).psi1(0.0) == 0.0
