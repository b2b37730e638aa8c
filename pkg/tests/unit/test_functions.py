"""
Unit Tests for Piecewise-Affine Convex Functions and Their Transforms
"""

import math
from fractions import Fraction

import pytest

from funcval.core.errors import (
    ComplexityExceeded,
    DimensionMismatch,
    EmptyResult,
    NotCoercive,
    OriginNotInterior,
    ParameterOutOfRange,
    Unbounded,
)
from funcval.convexfn.functions import (
    PacfFinite,
    PacfRestricted,
    SpecialKind,
    as_pacf,
    cone,
    evaluate,
    finite,
    guard,
    indicator,
    is_coercive,
    restricted,
    sublevel,
    sublevel_body,
    support,
)
from funcval.convexfn.transforms import add_constant, compose_linear, scale_hom, translate_fn, u_zero
from funcval.geomkernel.actions import scale, unimodular
from funcval.geomkernel.bodies import ball, cube, simplex
from funcval.geomkernel.lemmas import same_body
from funcval.geomkernel.polytope import halfspace_polytope, hull, to_hrep

F = Fraction


class TestConstruction:
    """Test canonical constructors"""

    def test_redundant_piece_dropped(self):
        u = finite([((1,), 0), ((-1,), 0), ((0,), -5)])
        assert len(u.pieces) == 2

    def test_duplicate_pieces_collapse(self):
        u = finite([((1, 0), 0), ((1, 0), 0), ((-1, 0), 0)])
        assert len(u.pieces) == 2

    def test_no_pieces(self):
        with pytest.raises(EmptyResult):
            finite([])

    def test_mismatched_slopes(self):
        with pytest.raises(DimensionMismatch):
            finite([((1, 0), 0), ((1,), 0)])

    def test_restricted_needs_bounded_domain(self):
        with pytest.raises(Unbounded):
            restricted([((0, 0), 0)], halfspace_polytope(2, [((1, 0), 1)]))

    def test_cone_needs_interior_origin(self):
        with pytest.raises(OriginNotInterior):
            cone(simplex(2))

    def test_cone_pieces_are_polar_vertices(self, sup_norm):
        """Test l_Q has the slopes +-e_i, the vertices of Q*"""
        pacf = as_pacf(cone(cube(2)))
        assert isinstance(pacf, PacfFinite)
        assert set(pacf.pieces) == set(sup_norm.pieces)

    def test_indicator_as_restricted(self, square):
        pacf = as_pacf(indicator(square, 3))
        assert isinstance(pacf, PacfRestricted)
        assert pacf.pieces == (((0, 0), 3),)

    def test_guard_piece_limit(self):
        """Test a 16-piece function trips the default limit of 12 pieces"""
        u = finite([(v, 0) for v in ball(2, 16).vertices])
        assert len(u.pieces) == 16
        with pytest.raises(ComplexityExceeded):
            guard(u)

    def test_guard_passes_small_input(self, l1_norm):
        assert guard(l1_norm) is l1_norm


class TestEvaluation:
    """Test evaluate and sublevel sets"""

    def test_max_affine(self, sup_norm):
        assert evaluate(sup_norm, (F(1, 2), -3)) == 3

    def test_restricted_outside_is_infinite(self, square):
        w = restricted([((1, 0), 0)], square)
        assert evaluate(w, (F(1, 2), 0)) == F(1, 2)
        assert evaluate(w, (2, 0)) == math.inf

    def test_special_kinds(self, square):
        assert evaluate(cone(square, 1), (3, -2)) == 4
        assert evaluate(indicator(square, 2), (0, 0)) == 2
        assert evaluate(indicator(square, 2), (2, 0)) == math.inf
        assert evaluate(support(square, 1), (1, 2)) == 2

    def test_dimension_mismatch(self, sup_norm):
        with pytest.raises(DimensionMismatch):
            evaluate(sup_norm, (1,))

    def test_coercivity(self, sup_norm, square):
        assert is_coercive(sup_norm)
        assert not is_coercive(finite([((1,), 0), ((2,), 0)]))
        assert is_coercive(support(square))
        assert not is_coercive(support(simplex(2)))

    def test_sublevel_of_cone_function(self, sup_norm, square):
        assert same_body(sublevel_body(sup_norm, 2), scale(square, 2))
        assert sublevel_body(sup_norm, -1) is None
        assert sublevel_body(sup_norm, 0).vertices == ((0, 0),)

    def test_sublevel_special(self, square):
        assert same_body(sublevel_body(cone(square, 1), 3), scale(square, 2))
        assert sublevel_body(indicator(square, 1), 0) is None
        assert sublevel(indicator(square, 1), 1) == to_hrep(square)

    def test_sublevel_of_restricted(self, square):
        w = restricted([((1, 0), 0)], square)
        assert same_body(sublevel_body(w, 0), hull([(-1, -1), (-1, 1), (0, -1), (0, 1)]))

    def test_non_coercive_sublevel(self):
        with pytest.raises(Unbounded):
            sublevel_body(finite([((1, 0), 0), ((-1, 0), 0)]), 1)


class TestTransforms:
    """Test translation, change of variables, shifts and dilation"""

    def test_translate(self, sup_norm):
        moved = translate_fn(sup_norm, (1, 2))
        assert evaluate(moved, (1, 2)) == 0
        assert evaluate(moved, (0, 0)) == 2

    def test_translate_indicator(self, square):
        moved = translate_fn(indicator(square), (3, 0))
        assert moved.kind == SpecialKind.INDICATOR
        assert evaluate(moved, (3, 0)) == 0

    def test_compose_linear(self, sup_norm):
        """Test (u o phi^-1)(phi x) = u(x)"""
        phi = unimodular([[1, 1], [0, 1]])
        moved = compose_linear(sup_norm, phi)
        x = (F(1, 2), F(-3))
        assert evaluate(moved, phi.apply(x)) == evaluate(sup_norm, x)

    def test_compose_linear_restricted(self, square):
        phi = unimodular([[1, 0], [2, 1]])
        w = restricted([((1, 1), 1)], square)
        moved = compose_linear(w, phi)
        x = (F(1, 3), F(-1, 2))
        assert evaluate(moved, phi.apply(x)) == evaluate(w, x)

    def test_add_constant(self, square, sup_norm):
        assert evaluate(add_constant(cone(square), 3), (0, 0)) == 3
        assert evaluate(add_constant(support(square), 1), (1, 0)) == 2
        assert evaluate(add_constant(sup_norm, F(-1, 2)), (1, 0)) == F(1, 2)

    def test_scale_hom(self, sup_norm, square):
        """Test u_lam(lam x) = u(x)"""
        assert evaluate(scale_hom(sup_norm, 2), (1, -6)) == 3
        assert evaluate(scale_hom(cone(square), 2), (1, -6)) == 3
        with pytest.raises(ParameterOutOfRange):
            scale_hom(sup_norm, 0)

    def test_transform_dimension(self, sup_norm):
        with pytest.raises(DimensionMismatch):
            translate_fn(sup_norm, (1, 2, 3))


class TestOriginHull:
    """Test u_0 = (u* v 0)*"""

    def test_positive_function_drops_to_zero(self, sup_norm):
        u0 = u_zero(add_constant(sup_norm, 1))
        assert evaluate(u0, (0, 0)) == 0
        assert evaluate(u0, (3, 0)) == 3

    def test_nonpositive_at_origin_unchanged(self, sup_norm):
        u = add_constant(sup_norm, -1)
        u0 = u_zero(u)
        for x in [(0, 0), (2, 0), (F(1, 2), F(-3, 2))]:
            assert evaluate(u0, x) == evaluate(u, x)

    def test_cone_kind(self, square):
        assert u_zero(cone(square, 2)) == cone(square, 0)
        assert u_zero(cone(square, -1)) == cone(square, -1)

    def test_not_coercive(self):
        with pytest.raises(NotCoercive):
            u_zero(finite([((1,), 0), ((2,), 0)]))
