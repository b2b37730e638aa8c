"""
Unit Tests for Volume Profiles and Valuation Functionals
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from funcval.core.errors import (
    NotCoercive,
    OriginNotInDomain,
    OriginNotInterior,
    ParameterOutOfRange,
    Unbounded,
)
from funcval.convexfn.conjugation import conjugate
from funcval.convexfn.functions import cone, finite, indicator, restricted, support
from funcval.convexfn.transforms import translate_fn
from funcval.geomkernel.actions import translate
from funcval.geomkernel.bodies import cube, simplex
from funcval.services.generators import random_function, rng_for
from funcval.valuations.functionals import (
    Valuation,
    ValuationSpec,
    components,
    dual_min_val,
    dualize,
    hessian_dual,
    hessian_dual_exact,
    origin_hull_volume,
    z0,
    z1,
    z2,
    z2_exact,
    z_total,
)
from funcval.valuations.profile import volume_profile
from funcval.zeta.presets import ZetaRole, bump, exp_decay, poly_cutoff

F = Fraction


class TestVolumeProfile:
    """Test exact sublevel volume profiles"""

    def test_cone_function(self, square):
        """Test V(t) = (t - s)^n V(K)"""
        profile = volume_profile(cone(square, 1))
        assert profile.minimum == 1
        assert profile.atom == 0
        assert profile.value(F(3)) == 16
        assert profile.value(F(0)) == 0

    def test_indicator_is_an_atom(self, square):
        profile = volume_profile(indicator(square, 2))
        assert profile.atom == 4
        assert profile.panels == ()
        assert profile.value(F(5)) == 4

    def test_support_of_centered_body(self, square):
        """Test h(Q, .) - 1 behaves like l_{Q*} - 1"""
        profile = volume_profile(support(square, 1))
        assert profile.minimum == -1
        assert profile.value(F(1)) == 8

    def test_l1_norm(self, l1_norm):
        """Test {|x|_1 <= t} = tC^2 has area 2t^2"""
        profile = volume_profile(l1_norm)
        assert profile.minimum == 0
        assert profile.atom == 0
        assert profile.value(F(3)) == 18
        assert profile.value(F(1, 2)) == F(1, 2)

    def test_restricted_panels(self, square):
        """Test x_1 on Q: V = 2(t + 1) on [-1, 1], then constant 4"""
        profile = volume_profile(restricted([((1, 0), 0)], square))
        assert profile.minimum == -1
        assert len(profile.panels) == 2
        assert profile.value(F(0)) == 2
        assert profile.value(F(5)) == 4

    def test_flat_bottom_atom(self):
        """Test a function constant on a region has an atom there"""
        u = finite([((1, 0), -1), ((-1, 0), -1), ((0, 1), -1), ((0, -1), -1), ((0, 0), 0)])
        profile = volume_profile(u)
        assert profile.minimum == 0
        assert profile.atom == 4

    def test_not_coercive(self):
        with pytest.raises(NotCoercive):
            volume_profile(finite([((1, 0), 0), ((-1, 0), 0)]))


class TestComponents:
    """Test z0, z1 and z2"""

    def test_z0(self, square_cone, exp_zeta):
        assert z0(square_cone, exp_zeta) == 1.0
        assert z0(cone(cube(2), 2), exp_zeta) == pytest.approx(math.exp(-2))

    def test_z1_cone(self, square_cone, exp_zeta):
        """Test int e^{-l_Q} = psi_1(0) V(Q) = 8"""
        assert z1(square_cone, exp_zeta).value == pytest.approx(8.0, rel=1e-12)

    def test_z1_indicator(self, square, exp_zeta):
        assert z1(indicator(square, 1), exp_zeta).value == pytest.approx(4 * math.exp(-1))

    def test_z1_l1_exp(self, l1_norm, exp_zeta):
        """Test int e^{-|x|_1} dx = 4"""
        assert z1(l1_norm, exp_zeta).value == pytest.approx(4.0, rel=1e-10)

    def test_z1_l1_bump(self, l1_norm):
        """Test int max(0, 1 - |x|_1) dx = 2/3"""
        assert z1(l1_norm, bump(0, 1, 1, ZetaRole.ZETA1)).value == pytest.approx(2 / 3, rel=1e-7)

    def test_z1_l1_cutoff(self, l1_norm, cutoff_zeta):
        """Test int (1 - |x|_1)_+^3 dx = 4 B(2, 4) = 1/5"""
        assert z1(l1_norm, cutoff_zeta).value == pytest.approx(0.2, rel=1e-7)

    def test_z1_restricted(self, square, exp_zeta):
        """Test int_Q e^{-x_1} dx = 2(e - 1/e)"""
        w = restricted([((1, 0), 0)], square)
        assert z1(w, exp_zeta).value == pytest.approx(2 * (math.e - 1 / math.e), rel=1e-7)

    def test_z2(self, square_cone, bump_zeta, l1_norm):
        """Test the Monge-Ampere sum zeta_2(0) V(Q*) = 2"""
        assert z2(square_cone, bump_zeta) == pytest.approx(2.0)
        assert z2_exact(l1_norm, bump_zeta) == 4

    def test_z2_indicator_unbounded(self, square, bump_zeta):
        with pytest.raises(Unbounded):
            z2(indicator(square), bump_zeta)

    def test_components(self, square_cone, full_spec):
        parts = components(square_cone, full_spec)
        assert parts.z0 == 1.0
        assert parts.z1 == pytest.approx(8.0)
        assert parts.z2 == pytest.approx(2.0)
        assert parts.total == pytest.approx(11.0)
        assert z_total(square_cone, full_spec) == pytest.approx(parts.total)

    def test_absent_weights(self, square_cone):
        assert components(square_cone, ValuationSpec(n=2)).total == 0.0


class TestValuationSpec:
    """Test weight-triple validation"""

    def test_role_mismatch(self):
        with pytest.raises(ParameterOutOfRange):
            ValuationSpec(n=2, zeta0=exp_decay(1))

    def test_cutoff_power(self):
        """Test the cutoff power must be at least n + 1"""
        with pytest.raises(ParameterOutOfRange):
            ValuationSpec(n=3, zeta1=poly_cutoff(1, 3))
        assert ValuationSpec(n=2, zeta1=poly_cutoff(1, 3)).zeta1.power == 3

    def test_dimension(self):
        with pytest.raises(ParameterOutOfRange):
            ValuationSpec(n=0)


class TestDualValuations:
    """Test Z*, the dual minimum valuation, the dual Hessian valuation and the origin hull"""

    def test_dual_on_support(self, square, exp_zeta):
        """Test Z*(h_Q) = Z(I_Q) = 4 for e^-t"""
        dual = Valuation(ValuationSpec(n=2, zeta1=exp_zeta), dual=True)
        assert dual(support(square)) == pytest.approx(4.0)

    def test_dualize_twice(self, full_spec):
        once = dualize(full_spec)
        assert once.dual
        assert not dualize(once).dual

    def test_dual_min_val(self, square, exp_zeta):
        w = restricted([((0, 0), 1)], square)
        assert dual_min_val(w, exp_zeta) == pytest.approx(math.e)

    def test_dual_min_val_outside_domain(self, square, exp_zeta):
        w = restricted([((0, 0), 0)], translate(square, (5, 5)))
        with pytest.raises(OriginNotInDomain):
            dual_min_val(w, exp_zeta)

    def test_hessian_dual(self, l1_norm, bump_zeta):
        assert hessian_dual_exact(conjugate(l1_norm), bump_zeta) == 4
        assert hessian_dual(conjugate(l1_norm), bump_zeta) == pytest.approx(4.0)

    def test_hessian_dual_needs_interior_origin(self, bump_zeta):
        w = restricted([((0, 0), 0)], simplex(2))
        with pytest.raises(OriginNotInterior):
            hessian_dual(w, bump_zeta)

    def test_origin_hull_volume(self, square, exp_zeta):
        """Test u_0 = u when u(0) <= 0, so the value is e * 8"""
        value = origin_hull_volume(cone(square, -1), exp_zeta).value
        assert value == pytest.approx(8 * math.e, rel=1e-10)

    def test_origin_hull_not_translation_invariant(self, sup_norm, exp_zeta):
        moved = translate_fn(sup_norm, (2, 0))
        assert origin_hull_volume(moved, exp_zeta).value != pytest.approx(
            origin_hull_volume(sup_norm, exp_zeta).value, rel=1e-6)

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10_000))
    def test_z2_equals_hessian_dual(self, seed):
        """Test the Monge-Ampere sum of u equals the dual Hessian integral of u*"""
        u = random_function(2, rng_for(seed))
        weight = bump(0, 2, 1)
        assert z2_exact(u, weight) == hessian_dual_exact(conjugate(u), weight)
