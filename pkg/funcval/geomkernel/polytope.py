"""
Exact Polytopes

Vertex and halfspace representations over exact rationals, conversions
between them, and the basic constructions: hull, polar, intersection,
convex union, volume and Hausdorff distance.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence, Tuple, Union

from funcval.core.config import settings
from funcval.core.errors import (
    ComplexityExceeded,
    DimensionMismatch,
    EmptyResult,
    OriginNotInterior,
    Unbounded,
)
from funcval.geomkernel import faces
from funcval.utils import cddlib
from funcval.utils.cddlib import Halfspace
from funcval.utils.rational import Number, Point, affine_rank, dot, primitive, to_fraction, to_point


def _canonical_halfspace(normal: Sequence[Fraction], offset: Fraction) -> Halfspace:
    ints, scaled = primitive(normal, offset)
    return tuple(Fraction(a) for a in ints), scaled


@dataclass(frozen=True)
class PolytopeV:
    """Polytope as the convex hull of its extreme points (use hull() to build)"""
    n: int
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        if not self.vertices:
            raise EmptyResult("a polytope needs at least one vertex")
        if any(len(v) != self.n for v in self.vertices):
            raise DimensionMismatch(f"vertex dimension differs from n={self.n}")

    @cached_property
    def hrep(self) -> "PolytopeH":
        return to_hrep(self)

    @property
    def dimension(self) -> int:
        """Affine dimension"""
        return affine_rank(self.vertices)

    @property
    def full_dimensional(self) -> bool:
        return self.dimension == self.n


@dataclass(frozen=True)
class PolytopeH:
    """Bounded polytope {x : normal . x <= offset for every halfspace}"""
    n: int
    halfspaces: Tuple[Halfspace, ...]

    def __post_init__(self):
        if any(len(normal) != self.n for normal, _ in self.halfspaces):
            raise DimensionMismatch(f"halfspace dimension differs from n={self.n}")

    @cached_property
    def vrep(self) -> PolytopeV:
        return to_vrep(self)


Polytope = Union[PolytopeV, PolytopeH]


def hull(points: Iterable[Sequence[Number]]) -> PolytopeV:
    """
    Convex hull of a finite point set

    Args:
        points: Coordinates (ints, floats, Fractions or "p/q" strings)

    Returns:
        PolytopeV with irredundant, lexicographically sorted vertices
    """
    exact = [to_point(p) for p in points]
    if not exact:
        raise EmptyResult("hull of no points")
    n = len(exact[0])
    if any(len(p) != n for p in exact):
        raise DimensionMismatch("points of different dimensions")
    if n > settings.max_geometry_dimension:
        raise ComplexityExceeded(f"dimension {n} exceeds {settings.max_geometry_dimension}")
    return PolytopeV(n=n, vertices=tuple(cddlib.extreme_points(exact)))


def halfspace_polytope(n: int, halfspaces: Iterable[Tuple[Sequence[Number], Number]]) -> PolytopeH:
    """Build a PolytopeH from raw (normal, offset) pairs, dropping zero normals"""
    rows = []
    for normal, offset in halfspaces:
        exact = to_point(normal)
        if len(exact) != n:
            raise DimensionMismatch(f"halfspace normal of length {len(exact)} in dimension {n}")
        if any(exact):
            rows.append((exact, to_fraction(offset)))
    return PolytopeH(n=n, halfspaces=tuple(rows))


def to_hrep(P: Polytope) -> PolytopeH:
    """
    Canonical facet description of a V-polytope

    Lower-dimensional polytopes carry their affine hull as pairs of
    opposite halfspaces. Normals are primitive integer vectors.
    """
    if isinstance(P, PolytopeH):
        return to_hrep(to_vrep(P))
    facets, equations = cddlib.inequalities(P.vertices)
    rows = {_canonical_halfspace(normal, offset) for normal, offset in facets}
    for normal, offset in equations:
        rows.add(_canonical_halfspace(normal, offset))
        rows.add(_canonical_halfspace(tuple(-a for a in normal), -offset))
    return PolytopeH(n=P.n, halfspaces=tuple(sorted(rows)))


def to_vrep(P: Polytope) -> PolytopeV:
    """
    Vertex description of an H-polytope

    Raises:
        Unbounded: The halfspaces admit a ray or a line
        EmptyResult: The halfspaces are infeasible
    """
    if isinstance(P, PolytopeV):
        return P
    gen = cddlib.generators(P.n, P.halfspaces)
    if gen.is_empty:
        raise EmptyResult("halfspace system is infeasible")
    if not gen.is_bounded:
        raise Unbounded("halfspace system is unbounded")
    return PolytopeV(n=P.n, vertices=tuple(sorted(set(gen.vertices))))


def as_vrep(P: Polytope) -> PolytopeV:
    return P if isinstance(P, PolytopeV) else P.vrep


def as_hrep(P: Polytope) -> PolytopeH:
    return P if isinstance(P, PolytopeH) else P.hrep


def contains(P: Polytope, x: Sequence[Number]) -> bool:
    """Exact membership test"""
    point = to_point(x)
    H = as_hrep(P)
    if len(point) != H.n:
        raise DimensionMismatch(f"point of length {len(point)} in dimension {H.n}")
    return all(dot(normal, point) <= offset for normal, offset in H.halfspaces)


def origin_interior(P: Polytope) -> bool:
    """True when the origin is an interior point of P"""
    V = as_vrep(P)
    if not V.full_dimensional:
        return False
    return all(offset > 0 for _, offset in as_hrep(V).halfspaces)


def volume(P: Polytope) -> Fraction:
    """
    Exact n-dimensional volume

    Sums simplex volumes of a pulling triangulation; lower-dimensional
    polytopes have volume 0.
    """
    V = as_vrep(P)
    if not V.full_dimensional:
        return Fraction(0)
    simplices = faces.triangulate(V.vertices, as_hrep(V).halfspaces)
    return sum((faces.simplex_volume(s) for s in simplices), Fraction(0))


def polar(P: Polytope) -> Polytope:
    """
    Polar body {y : x . y <= 1 for all x in P}, with the representation swapped

    Raises:
        OriginNotInterior: The origin is not an interior point of P
    """
    if isinstance(P, PolytopeV):
        if not origin_interior(P):
            raise OriginNotInterior("polar needs the origin in the interior")
        rows = {_canonical_halfspace(v, Fraction(1)) for v in P.vertices}
        return PolytopeH(n=P.n, halfspaces=tuple(sorted(rows)))
    if any(offset <= 0 for _, offset in P.halfspaces):
        raise OriginNotInterior("polar needs the origin in the interior")
    points = [tuple(a / offset for a in normal) for normal, offset in P.halfspaces]
    result = hull(points) if points else None
    if result is None or not result.full_dimensional:
        raise Unbounded("polar of an unbounded set is not full-dimensional")
    return result


def polar_volume(P: Polytope) -> Fraction:
    """V_n of the polar body"""
    return volume(polar(as_vrep(P)))


def intersect(P: Polytope, Q: Polytope) -> Optional[PolytopeH]:
    """Exact intersection, or None when it is empty"""
    A, B = as_hrep(P), as_hrep(Q)
    if A.n != B.n:
        raise DimensionMismatch(f"intersecting dimensions {A.n} and {B.n}")
    combined = PolytopeH(n=A.n, halfspaces=A.halfspaces + B.halfspaces)
    try:
        return to_hrep(to_vrep(combined))
    except EmptyResult:
        return None


def intersect_halfspace(P: Polytope, normal: Sequence[Number], offset: Number) -> Optional[PolytopeH]:
    """Intersection with {x : normal . x <= offset}, or None when empty"""
    H = as_hrep(P)
    return intersect(H, halfspace_polytope(H.n, [(normal, offset)]))


def conv_union(P: Polytope, Q: Polytope) -> PolytopeV:
    """Convex hull of the union of two polytopes"""
    A, B = as_vrep(P), as_vrep(Q)
    if A.n != B.n:
        raise DimensionMismatch(f"joining dimensions {A.n} and {B.n}")
    return hull(A.vertices + B.vertices)


def support_value(P: Polytope, direction: Sequence[Number]) -> Fraction:
    """h(P, direction) = max over P of x . direction"""
    d = to_point(direction)
    return max(dot(v, d) for v in as_vrep(P).vertices)


def hausdorff_distance_sq(P: Polytope, Q: Polytope) -> Fraction:
    """Exact squared Hausdorff distance"""
    A, B = as_vrep(P), as_vrep(Q)
    if A.n != B.n:
        raise DimensionMismatch(f"comparing dimensions {A.n} and {B.n}")
    worst = Fraction(0)
    for source, target in ((A, B), (B, A)):
        halfspaces = as_hrep(target).halfspaces
        lattice = faces.enumerate_faces(target.vertices, halfspaces)
        for v in source.vertices:
            worst = max(worst, faces.distance_sq(target.vertices, halfspaces, v, lattice))
    return worst


def hausdorff_distance(P: Polytope, Q: Polytope) -> float:
    """
    Hausdorff distance between two polytopes

    The distance to a convex set is convex, so the maximum over each body
    is attained at one of its vertices.
    """
    return math.sqrt(float(hausdorff_distance_sq(P, Q)))
