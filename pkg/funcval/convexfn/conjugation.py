"""
Legendre-Fenchel Conjugation

Exact conjugation between finite max-affine functions and max-affine
functions on bounded polytopes, the subdivision of dom u* into the
subdifferentials of u, minimum values and coercivity margins.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from funcval.core.errors import NotCoercive, UnsupportedInput
from funcval.core.logging import get_logger
from funcval.convexfn.functions import (
    ConvexFn,
    PacfFinite,
    PacfRestricted,
    Piece,
    SpecialFn,
    SpecialKind,
    epigraph_rows,
    domain_rows,
    as_pacf,
    cone_slopes,
    finite,
    indicator,
    is_coercive,
    restricted,
    support,
)
from funcval.geomkernel.polytope import (
    PolytopeH,
    PolytopeV,
    as_hrep,
    contains,
    hull,
    origin_interior,
    polar,
    volume,
)
from funcval.utils import cddlib
from funcval.utils.rational import Point, dot, norm_sq, zero

logger = get_logger(__name__)


@dataclass(frozen=True)
class Cell:
    """A linearity cell of u*: u*(y) = gradient . y - value on the cell"""
    gradient: Point
    value: Fraction
    polytope: PolytopeV

    @property
    def cell(self) -> PolytopeH:
        return self.polytope.hrep

    @property
    def volume(self) -> Fraction:
        return volume(self.polytope)


@dataclass(frozen=True)
class Subdivision:
    """Cells covering dom u*, one per vertex of epi u"""
    cells: Tuple[Cell, ...]
    ambient: PolytopeV


@dataclass(frozen=True)
class VertexCone:
    """Cone below u at the lowest vertex of its epigraph"""
    function: PacfFinite
    apex: Point
    height: Fraction
    body: Optional[PolytopeV]  # {x : a_j . x <= 1} when the tight slopes surround 0


def epigraph_vertices(u: Union[PacfFinite, PacfRestricted]) -> List[Tuple[Point, Fraction]]:
    """
    Vertices (x, u(x)) of the epigraph

    When the epigraph has lines, one representative point per vertex class
    of the quotient is returned instead.
    """
    rows = epigraph_rows(u.pieces)
    if isinstance(u, PacfRestricted):
        rows += domain_rows(u.domain)
    gen = cddlib.generators(u.n + 1, rows)
    return sorted((v[:-1], v[-1]) for v in gen.vertices)


def conjugate(u: ConvexFn) -> ConvexFn:
    """
    Legendre-Fenchel conjugate u*(y) = sup_x (x . y - u(x))

    PacfFinite maps to PacfRestricted on conv{a_i}, PacfRestricted maps to
    PacfFinite, and special kinds map to their partner kind.
    """
    if isinstance(u, SpecialFn):
        if u.kind == SpecialKind.CONE:
            return indicator(hull(cone_slopes(u.body)), -u.shift)
        if u.kind == SpecialKind.INDICATOR:
            return support(u.body, u.shift)
        return indicator(u.body, u.shift)

    pieces = [(x, -s) for x, s in epigraph_vertices(u)]
    if isinstance(u, PacfFinite):
        return restricted(pieces, hull(u.slopes))
    return finite(pieces)


def require_coercive(u: ConvexFn) -> None:
    if not is_coercive(u):
        raise NotCoercive("0 is not interior to the hull of the slopes")


def subdivision(u: ConvexFn) -> Subdivision:
    """
    Subdifferential cells of a coercive function

    Each vertex x_v of epi u contributes the cell conv{a_j : j tight at x_v}
    carrying the value u(x_v). Cone functions give the single cell K* at 0.

    Raises:
        NotCoercive: u is not coercive
        UnsupportedInput: u is an indicator or a restricted function
    """
    if isinstance(u, SpecialFn) and u.kind == SpecialKind.CONE:
        dual = hull(cone_slopes(u.body))
        return Subdivision(cells=(Cell(zero(u.n), u.shift, dual),), ambient=dual)
    if isinstance(u, PacfRestricted) or (isinstance(u, SpecialFn) and u.kind == SpecialKind.INDICATOR):
        raise UnsupportedInput("subdivision is defined for finite functions")
    u = as_pacf(u)
    require_coercive(u)
    cells = []
    for x, value in epigraph_vertices(u):
        tight = [a for a, b in u.pieces if dot(a, x) + b == value]
        cells.append(Cell(gradient=x, value=value, polytope=hull(tight)))
    return Subdivision(cells=tuple(cells), ambient=hull(u.slopes))


def linearity_cells(w: ConvexFn) -> List[Tuple[Piece, PolytopeV]]:
    """
    Regions of the domain where each piece of a restricted function attains the max

    Lower-dimensional regions are dropped.
    """
    w = as_pacf(w)
    if not isinstance(w, PacfRestricted):
        raise UnsupportedInput("linearity cells are computed for restricted functions")
    cells = []
    for a, b in w.pieces:
        rows = [(tuple(ai - aj for ai, aj in zip(other, a)), b - other_b) for other, other_b in w.pieces]
        rows = [(normal, offset) for normal, offset in rows if any(normal)] + list(w.domain.halfspaces)
        gen = cddlib.generators(w.n, rows)
        if gen.is_empty:
            continue
        region = hull(gen.vertices)
        if region.full_dimensional:
            cells.append(((a, b), region))
    return cells


def min_value(u: ConvexFn) -> Tuple[Fraction, Point]:
    """
    Minimum of u and a minimizer

    For finite functions this reads -u*(0) off the subdivision cell holding
    the origin; the minimizer is that cell's gradient point.

    Raises:
        NotCoercive: A finite function that is not coercive
    """
    if isinstance(u, SpecialFn):
        if u.kind == SpecialKind.CONE:
            return u.shift, zero(u.n)
        if u.kind == SpecialKind.INDICATOR:
            return u.shift, u.body.vertices[0]
    u = as_pacf(u)
    if isinstance(u, PacfRestricted):
        value, point = min(((s, x) for x, s in epigraph_vertices(u)))
        return value, point
    origin = zero(u.n)
    candidates = [c for c in subdivision(u).cells if contains(c.polytope, origin)]
    best = min(candidates, key=lambda c: c.gradient)
    return best.value, best.gradient


def coercivity_margin(u: ConvexFn) -> Fraction:
    """
    Squared radius of the largest origin-centered ball inside conv{a_i}

    Zero when the origin is not interior. Any a below the radius admits a b
    with u(x) >= a|x| + b.
    """
    if isinstance(u, PacfRestricted) or (isinstance(u, SpecialFn) and u.kind == SpecialKind.INDICATOR):
        raise UnsupportedInput("coercivity margin is defined for finite functions")
    slopes = hull(as_pacf(u).slopes)
    if not origin_interior(slopes):
        return Fraction(0)
    return min(offset * offset / norm_sq(normal) for normal, offset in as_hrep(slopes).halfspaces)


def lowest_vertex_cone(u: ConvexFn) -> VertexCone:
    """
    Cone function cut out by the pieces tight at the lowest vertex of epi u

    u >= cone everywhere, with equality at the vertex.
    """
    u = as_pacf(u)
    if not isinstance(u, PacfFinite):
        raise UnsupportedInput("lowest vertex cone needs a finite function")
    require_coercive(u)
    apex, height = min(epigraph_vertices(u), key=lambda v: (v[1], v[0]))
    tight = [(a, b) for a, b in u.pieces if dot(a, apex) + b == height]
    slopes = hull([a for a, _ in tight])
    body = None
    if origin_interior(slopes):
        body = polar(slopes.hrep)
    return VertexCone(function=finite(tight), apex=apex, height=height, body=body)
