"""
Unit Tests for Growth Recovery, the Box Identity, the Valuation Identity,
the Synthesis Chain and the Input Generators
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from funcval.core.errors import DimensionMismatch, IllConditioned, NonConvexMin, ParameterOutOfRange
from funcval.convexfn.functions import is_coercive
from funcval.convexfn.lattice import NonConvex, min_fn
from funcval.convexfn.transforms import add_constant, translate_fn
from funcval.geomkernel.bodies import ball, cube
from funcval.geomkernel.polytope import origin_interior
from funcval.services.generators import (
    PairFamily,
    cut_cone_pair,
    generate_pair,
    random_body,
    random_function,
    rng_for,
)
from funcval.valuations.box import box_identity_check, cnk_coefficients
from funcval.valuations.functionals import ValuationSpec
from funcval.valuations.growth import growth_difference, growth_extract, growth_fns
from funcval.valuations.identity import valuation_identity_check
from funcval.valuations.synthesis import STEP_NAMES, gauge_integral, synthesis_chain
from funcval.zeta.presets import exp_decay

F = Fraction

LAMBDAS = (F(1), F(2), F(1, 2))


class TestGrowthRecovery:
    """Test growth_extract and growth_difference"""

    def test_recovers_growth_functions(self, full_spec, square):
        """Test psi_0 = e^-t, psi_1 = 2e^-t and psi_2 = tent at t = 1/2"""
        sample = growth_extract(full_spec, square, F(1, 2), LAMBDAS)
        assert sample.psi0 == pytest.approx(math.exp(-0.5), abs=1e-6)
        assert sample.psi1 == pytest.approx(2 * math.exp(-0.5), rel=1e-6)
        assert sample.psi2 == pytest.approx(0.5, abs=1e-6)
        assert sample.residual < 1e-6

    def test_psi2_vanishes_above_support(self, full_spec, square):
        sample = growth_extract(full_spec, square, F(2), LAMBDAS)
        assert sample.psi2 == pytest.approx(0.0, abs=1e-6)
        assert growth_fns(full_spec).psi2(2.0) == 0.0

    def test_needs_three_scales(self, full_spec, square):
        with pytest.raises(ParameterOutOfRange):
            growth_extract(full_spec, square, 0, [1, 1, 2])

    def test_ill_conditioned(self, full_spec, square):
        with pytest.raises(IllConditioned):
            growth_extract(full_spec, square, 0, [1, 1.000001, 1.000002])

    def test_dimension_mismatch(self, full_spec):
        with pytest.raises(DimensionMismatch):
            growth_extract(full_spec, cube(3), 0, LAMBDAS)

    def test_difference(self, full_spec, square):
        measured, expected = growth_difference(full_spec, square, 0, 2)
        assert measured == pytest.approx(expected, rel=1e-6)


class TestBoxIdentity:
    """Test c_{n,k} and the regularized box indicator"""

    def test_coefficients(self):
        assert cnk_coefficients(2, F(1, 2)) == [1, 2, 1]
        assert cnk_coefficients(1, F(1, 4)) == [F(1, 2), 1]
        assert cnk_coefficients(3, 1) == [8, 12, 6, 1]

    def test_coefficient_ranges(self):
        with pytest.raises(ParameterOutOfRange):
            cnk_coefficients(0, F(1, 2))
        with pytest.raises(ParameterOutOfRange):
            cnk_coefficients(2, 0)

    def test_square_value(self, exp_zeta):
        report = box_identity_check(2, 1, F(1, 2), 0, exp_zeta)
        assert report.lhs == pytest.approx(4.0, rel=1e-6)
        assert report.rhs == pytest.approx(4.0, rel=1e-12)
        assert report.passed

    def test_segment_value(self, exp_zeta):
        report = box_identity_check(1, F(1, 2), F(1, 2), 0, exp_zeta)
        assert report.lhs == pytest.approx(1.5, rel=1e-6)
        assert report.passed

    def test_segment_value_quarter(self, exp_zeta):
        """Test lam = 1, delta = 1/4 on the segment also gives 3/2"""
        report = box_identity_check(1, 1, F(1, 4), 0, exp_zeta)
        assert report.lhs == pytest.approx(1.5, rel=1e-6)
        assert report.rhs == pytest.approx(1.5, rel=1e-12)
        assert report.passed

    def test_shifted_box(self, exp_zeta):
        assert box_identity_check(2, 2, F(1, 4), 1, exp_zeta).passed

    def test_dimension_range(self, exp_zeta):
        with pytest.raises(ParameterOutOfRange):
            box_identity_check(3, 1, F(1, 2), 0, exp_zeta)


class TestValuationIdentity:
    """Test Z(u v v) + Z(u ^ v) = Z(u) + Z(v)"""

    def test_cut_cone_pair(self, full_spec):
        pair = cut_cone_pair(2, F(1, 4), F(1, 2), F(1))
        report = valuation_identity_check(full_spec, pair.u, pair.v)
        assert report.z0_exact
        assert report.z2_exact
        assert report.passed

    def test_shift_pair(self, full_spec, sup_norm):
        report = valuation_identity_check(full_spec, sup_norm, add_constant(sup_norm, 1))
        assert report.gap <= report.bound
        assert report.passed

    def test_non_convex_min(self, abs_1d):
        spec = ValuationSpec(n=1, zeta1=exp_decay(1))
        with pytest.raises(NonConvexMin):
            valuation_identity_check(spec, translate_fn(abs_1d, (1,)), translate_fn(abs_1d, (-1,)))

    @settings(max_examples=5, deadline=None)
    @given(st.integers(0, 10_000))
    def test_generated_pairs(self, seed):
        spec = ValuationSpec(n=2, zeta1=exp_decay(1))
        pair = generate_pair(2, seed)
        assert valuation_identity_check(spec, pair.u, pair.v).passed


class TestSynthesis:
    """Test the synthesis chain on polygons inscribed in the unit circle"""

    def test_gauge_integral(self, square, exp_zeta):
        """Test int e^{-l_Q} = 8 through the sector quadrature"""
        assert gauge_integral(square, exp_zeta, 0.0) == pytest.approx(8.0, rel=1e-8)
        assert gauge_integral(square, exp_zeta, 0.0, 2.0) == pytest.approx(32.0, rel=1e-8)

    def test_chain_agrees(self, full_spec):
        report = synthesis_chain(full_spec, 1, 0, body=ball(2, 16))
        assert len(report.steps) == len(STEP_NAMES) == 7
        assert report.passed
        assert max(report.chain_gaps) < 1e-5 * max(1.0, abs(report.steps[0]))

    def test_chain_dilated_and_shifted(self, full_spec):
        assert synthesis_chain(full_spec, 2, 1, body=ball(2, 16)).passed

    def test_broken_middle_line_fails(self, full_spec, monkeypatch):
        """Test a wrong gauge integral is caught though both ends agree"""
        real = gauge_integral
        monkeypatch.setattr("funcval.valuations.synthesis.gauge_integral",
                            lambda *args, **kwargs: real(*args, **kwargs) + 1.0)
        report = synthesis_chain(full_spec, 1, 0, body=ball(2, 16))
        assert abs(report.steps[0] - report.steps[-1]) < 1e-5 * max(1.0, abs(report.steps[0]))
        assert report.relative_gap > report.tol
        assert not report.passed

    def test_ball_gaps_shrink(self, full_spec):
        coarse = synthesis_chain(full_spec, 1, 0, body=ball(2, 8))
        fine = synthesis_chain(full_spec, 1, 0, body=ball(2, 32))
        assert fine.volume_gap < coarse.volume_gap
        assert fine.polar_volume_gap < coarse.polar_volume_gap

    def test_plane_only(self):
        with pytest.raises(ParameterOutOfRange):
            synthesis_chain(ValuationSpec(n=3, zeta1=exp_decay(1)), 1, 0)


class TestGenerators:
    """Test seeded input generation"""

    def test_pairs_are_deterministic(self):
        first, second = generate_pair(2, 7), generate_pair(2, 7)
        assert first.family == second.family
        assert first.u == second.u
        assert first.v == second.v

    @pytest.mark.parametrize("family", list(PairFamily))
    def test_families_have_convex_min(self, family):
        pair = generate_pair(2, 3, family)
        assert pair.family == family
        assert not isinstance(min_fn(pair.u, pair.v), NonConvex)

    def test_line_falls_back_from_cut_cone(self):
        assert generate_pair(1, 0, PairFamily.CUT_CONE).family == PairFamily.SHIFT

    def test_dimension_range(self):
        with pytest.raises(ParameterOutOfRange):
            generate_pair(4, 0)

    def test_random_function_is_coercive(self):
        u = random_function(3, rng_for(12))
        assert is_coercive(u)
        assert len(u.pieces) <= 8

    def test_random_function_piece_budget(self):
        with pytest.raises(ParameterOutOfRange):
            random_function(2, rng_for(0), max_pieces=3)

    def test_random_body_contains_origin(self):
        assert origin_interior(random_body(3, rng_for(4)))
