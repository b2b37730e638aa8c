"""
Unit Tests for Exact Polytopes

Tests hull, representation conversion, volume, polarity, intersection and
Hausdorff distance.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from funcval.core.errors import DimensionMismatch, EmptyResult, OriginNotInterior, Unbounded
from funcval.geomkernel.actions import apply_map, random_unimodular, scale, translate
from funcval.geomkernel.bodies import cross, cube, simplex
from funcval.geomkernel.lemmas import same_body
from funcval.geomkernel.polytope import (
    PolytopeH,
    conv_union,
    contains,
    halfspace_polytope,
    hausdorff_distance,
    hausdorff_distance_sq,
    hull,
    intersect,
    intersect_halfspace,
    origin_interior,
    polar,
    polar_volume,
    to_hrep,
    to_vrep,
    volume,
)
from funcval.services.generators import random_body, rng_for

F = Fraction


class TestHull:
    """Test hull construction"""

    def test_drops_interior_points(self):
        P = hull([(0, 0), (1, 0), (0, 1), (F(1, 4), F(1, 4))])
        assert P.vertices == ((0, 0), (0, 1), (1, 0))

    def test_accepts_ratio_strings(self):
        P = hull([("1/2", 0), (0, "1/2"), (0, 0)])
        assert (F(1, 2), F(0)) in P.vertices

    def test_empty_input(self):
        with pytest.raises(EmptyResult):
            hull([])

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionMismatch):
            hull([(0, 0), (1, 0, 0)])

    def test_lower_dimensional(self):
        """Test a segment in the plane keeps its endpoints and has dimension 1"""
        P = hull([(0, 0), (1, 1), (2, 2)])
        assert P.vertices == ((0, 0), (2, 2))
        assert P.dimension == 1
        assert not P.full_dimensional


class TestRepresentations:
    """Test V <-> H conversion"""

    def test_square_facets(self, square):
        """Test facets come out with primitive integer normals"""
        assert set(to_hrep(square).halfspaces) == {
            ((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1),
        }

    def test_round_trip(self, triangle):
        assert to_vrep(to_hrep(triangle)) == triangle

    def test_unbounded_halfspaces(self):
        with pytest.raises(Unbounded):
            to_vrep(halfspace_polytope(2, [((1, 0), 1), ((-1, 0), 1)]))

    def test_infeasible_halfspaces(self):
        with pytest.raises(EmptyResult):
            to_vrep(halfspace_polytope(1, [((1,), -1), ((-1,), -1)]))

    def test_contains(self, square):
        assert contains(square, (1, F(-1, 2)))
        assert not contains(square, (F(3, 2), 0))


class TestVolume:
    """Test exact volumes"""

    @pytest.mark.parametrize("n,expected", [(1, F(1)), (2, F(1, 2)), (3, F(1, 6))])
    def test_simplex(self, n, expected):
        assert volume(simplex(n)) == expected

    def test_standard_bodies(self, square, diamond, triangle):
        assert volume(square) == 4
        assert volume(diamond) == 2
        assert volume(triangle) == 2

    def test_lower_dimensional_is_zero(self):
        assert volume(hull([(0, 0), (1, 1)])) == 0

    def test_h_representation(self):
        box = halfspace_polytope(2, [((1, 0), 2), ((-1, 0), 0), ((0, 1), 3), ((0, -1), 0)])
        assert volume(box) == 6

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10_000))
    def test_unimodular_invariance(self, seed):
        """Test V_n(phi K) = V_n(K) for det phi = 1"""
        K = random_body(2, rng_for(seed))
        assert volume(apply_map(random_unimodular(2, seed), K)) == volume(K)


class TestPolar:
    """Test polar bodies"""

    def test_square_and_diamond(self, square, diamond):
        assert isinstance(polar(square), PolytopeH)
        assert same_body(polar(square), diamond)

    def test_triangle(self, triangle):
        """Test T_{1/2}* = conv{(-2, 0), (0, -2), (1, 1)}"""
        assert same_body(polar(triangle), hull([(-2, 0), (0, -2), (1, 1)]))
        assert polar_volume(triangle) == 4

    def test_origin_on_boundary(self):
        with pytest.raises(OriginNotInterior):
            polar(simplex(2))

    def test_origin_interior(self, square):
        assert origin_interior(square)
        assert not origin_interior(simplex(2))

    @settings(max_examples=10, deadline=None)
    @given(st.integers(0, 10_000))
    def test_bipolar(self, seed):
        """Test K** = K"""
        K = random_body(2, rng_for(seed))
        assert same_body(polar(polar(K)), K)


class TestConstructions:
    """Test intersection, convex union and Hausdorff distance"""

    def test_disjoint_intersection(self, square):
        assert intersect(square, translate(square, (5, 0))) is None

    def test_halfspace_cut(self, square):
        half = intersect_halfspace(square, (1, 0), 0)
        assert volume(half) == 2

    def test_conv_union(self, square, diamond):
        assert same_body(conv_union(square, diamond), square)
        assert same_body(conv_union(diamond, scale(diamond, 2)), scale(diamond, 2))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            conv_union(cube(2), cube(3))

    def test_hausdorff_of_dilation(self, square):
        """Test d_H(Q, 2Q) = sqrt(2), attained at the corners"""
        assert hausdorff_distance_sq(square, scale(square, 2)) == 2
        assert hausdorff_distance(square, scale(square, 2)) == pytest.approx(math.sqrt(2))

    def test_hausdorff_of_translation(self, diamond):
        assert hausdorff_distance_sq(diamond, translate(diamond, (F(1, 2), 0))) == F(1, 4)

    def test_hausdorff_to_itself(self, triangle):
        assert hausdorff_distance_sq(triangle, triangle) == 0

    def test_cross_is_polar_of_cube(self):
        assert same_body(polar(cube(3)), cross(3))
