"""
Piecewise-Affine Convex Functions

Value types for finite max-affine functions, max-affine functions on a
bounded polytope domain, and the tagged special kinds (cone functions,
shifted indicators, shifted support functions), with evaluation,
sublevel sets and piece canonicalization.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from funcval.core.config import settings
from funcval.core.errors import (
    ComplexityExceeded,
    DimensionMismatch,
    EmptyResult,
    OriginNotInterior,
    Unbounded,
)
from funcval.geomkernel.actions import scale as scale_body
from funcval.geomkernel.polytope import (
    Polytope,
    PolytopeH,
    PolytopeV,
    as_hrep,
    as_vrep,
    contains,
    hull,
    origin_interior,
    to_hrep,
    to_vrep,
)
from funcval.utils import cddlib
from funcval.utils.rational import Number, Point, dot, to_fraction, to_point, zero

Piece = Tuple[Point, Fraction]

INF = math.inf


def make_piece(a: Sequence[Number], b: Number) -> Piece:
    return to_point(a), to_fraction(b)


def _check_pieces(n: int, pieces: Sequence[Piece]) -> None:
    if not pieces:
        raise EmptyResult("a piecewise-affine function needs at least one piece")
    if any(len(a) != n for a, _ in pieces):
        raise DimensionMismatch(f"piece slope dimension differs from n={n}")


def epigraph_rows(pieces: Sequence[Piece]) -> List[cddlib.Halfspace]:
    # a.x + b <= s  <=>  (a, -1).(x, s) <= -b
    return [(a + (Fraction(-1),), -b) for a, b in pieces]


def domain_rows(domain: PolytopeH) -> List[cddlib.Halfspace]:
    return [(normal + (Fraction(0),), offset) for normal, offset in domain.halfspaces]


def irredundant_pieces(n: int, pieces: Iterable[Piece],
                       domain: Optional[PolytopeH] = None) -> Tuple[Piece, ...]:
    """
    Pieces attaining the maximum on a full-dimensional region

    A piece is kept iff its row defines a facet of the epigraph (restricted
    to the domain when one is given). Coincident pieces collapse to one.
    """
    unique = sorted(set(pieces))
    if len(unique) <= 1:
        return tuple(unique)
    rows = epigraph_rows(unique)
    if domain is not None:
        rows += domain_rows(domain)
    kept = [i for i in cddlib.irredundant(n + 1, rows) if i < len(unique)]
    return tuple(unique[i] for i in kept)


@dataclass(frozen=True)
class PacfFinite:
    """u(x) = max_i (a_i . x + b_i), finite everywhere"""
    n: int
    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        _check_pieces(self.n, self.pieces)

    @property
    def slopes(self) -> List[Point]:
        return [a for a, _ in self.pieces]


@dataclass(frozen=True)
class PacfRestricted:
    """w(x) = max_i (a_i . x + b_i) on a bounded domain, +inf outside"""
    n: int
    pieces: Tuple[Piece, ...]
    domain: PolytopeH

    def __post_init__(self):
        _check_pieces(self.n, self.pieces)
        if self.domain.n != self.n:
            raise DimensionMismatch(f"domain of dimension {self.domain.n} for n={self.n}")


class SpecialKind(str, Enum):
    """Tagged special functions"""
    CONE = "cone"  # l_K + shift
    INDICATOR = "indicator"  # I_K + shift
    SUPPORT = "support"  # h(K, .) - shift


@dataclass(frozen=True)
class SpecialFn:
    """Cone, shifted indicator or shifted support function of a body"""
    kind: SpecialKind
    body: PolytopeV
    shift: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind == SpecialKind.CONE and not origin_interior(self.body):
            raise OriginNotInterior("cone functions need the origin in the interior of K")

    @property
    def n(self) -> int:
        return self.body.n


ConvexFn = Union[PacfFinite, PacfRestricted, SpecialFn]


def finite(pieces: Iterable[Tuple[Sequence[Number], Number]]) -> PacfFinite:
    """Canonical PacfFinite from raw (a, b) pairs"""
    exact = [make_piece(a, b) for a, b in pieces]
    if not exact:
        raise EmptyResult("a piecewise-affine function needs at least one piece")
    n = len(exact[0][0])
    _check_pieces(n, exact)
    return PacfFinite(n=n, pieces=irredundant_pieces(n, exact))


def restricted(pieces: Iterable[Tuple[Sequence[Number], Number]], domain: Polytope) -> PacfRestricted:
    """
    Canonical PacfRestricted from raw (a, b) pairs and a bounded domain

    Raises:
        Unbounded: The domain is unbounded
        EmptyResult: The domain is empty
    """
    exact = [make_piece(a, b) for a, b in pieces]
    canonical_domain = to_hrep(to_vrep(domain))
    n = canonical_domain.n
    _check_pieces(n, exact)
    return PacfRestricted(n=n, pieces=irredundant_pieces(n, exact, canonical_domain), domain=canonical_domain)


def cone(body: Polytope, shift: Number = 0) -> SpecialFn:
    """l_K + shift"""
    return SpecialFn(SpecialKind.CONE, as_vrep(body), to_fraction(shift))


def indicator(body: Polytope, shift: Number = 0) -> SpecialFn:
    """I_K + shift"""
    return SpecialFn(SpecialKind.INDICATOR, as_vrep(body), to_fraction(shift))


def support(body: Polytope, shift: Number = 0) -> SpecialFn:
    """h(K, .) - shift"""
    return SpecialFn(SpecialKind.SUPPORT, as_vrep(body), to_fraction(shift))


def cone_slopes(body: Polytope) -> List[Point]:
    """Slopes of l_K: facet normals n_f / o_f, i.e. the vertices of K*"""
    return sorted(tuple(a / offset for a in normal) for normal, offset in as_hrep(body).halfspaces)


def as_pacf(u: ConvexFn) -> Union[PacfFinite, PacfRestricted]:
    """
    Piece-list form of a function

    Cone and support kinds become PacfFinite, indicators become a constant
    PacfRestricted on the body.
    """
    if isinstance(u, (PacfFinite, PacfRestricted)):
        return u
    if u.kind == SpecialKind.CONE:
        pieces = tuple((a, u.shift) for a in cone_slopes(u.body))
        return PacfFinite(n=u.n, pieces=pieces)
    if u.kind == SpecialKind.SUPPORT:
        pieces = tuple((v, -u.shift) for v in u.body.vertices)
        return PacfFinite(n=u.n, pieces=pieces)
    return PacfRestricted(n=u.n, pieces=((zero(u.n), u.shift),), domain=as_hrep(u.body))


def pieces_of(u: ConvexFn) -> Tuple[Piece, ...]:
    return as_pacf(u).pieces


def guard(u: ConvexFn) -> ConvexFn:
    """
    Enforce the complexity limits on a function entering the library

    Raises:
        ComplexityExceeded: Dimension or piece count above the configured limit
    """
    if u.n > settings.max_dimension:
        raise ComplexityExceeded(f"dimension {u.n} exceeds {settings.max_dimension}")
    if isinstance(u, (PacfFinite, PacfRestricted)) and len(u.pieces) > settings.max_pieces:
        raise ComplexityExceeded(f"{len(u.pieces)} pieces exceed {settings.max_pieces}")
    return u


def _max_affine(pieces: Sequence[Piece], x: Point) -> Fraction:
    return max(dot(a, x) + b for a, b in pieces)


def evaluate(u: ConvexFn, x: Sequence[Number]) -> Union[Fraction, float]:
    """
    Exact value u(x), or math.inf outside the domain

    Raises:
        DimensionMismatch: len(x) differs from u.n
    """
    point = to_point(x)
    if len(point) != u.n:
        raise DimensionMismatch(f"point of length {len(point)} for function on R^{u.n}")
    if isinstance(u, PacfFinite):
        return _max_affine(u.pieces, point)
    if isinstance(u, PacfRestricted):
        if not contains(u.domain, point):
            return INF
        return _max_affine(u.pieces, point)
    if u.kind == SpecialKind.INDICATOR:
        return u.shift if contains(u.body, point) else INF
    return _max_affine(as_pacf(u).pieces, point)


def is_coercive(u: ConvexFn) -> bool:
    """Coercive iff the origin is interior to the hull of the slopes"""
    if isinstance(u, PacfRestricted):
        return True
    if isinstance(u, SpecialFn):
        return u.kind != SpecialKind.SUPPORT or origin_interior(u.body)
    return origin_interior(hull(u.slopes))


def sublevel_body(u: ConvexFn, t: Number) -> Optional[PolytopeV]:
    """
    {x : u(x) <= t} as a vertex list, or None when empty

    Raises:
        Unbounded: The sublevel set of a non-coercive function is unbounded
    """
    level = to_fraction(t)
    if isinstance(u, SpecialFn):
        if u.kind == SpecialKind.CONE:
            if level < u.shift:
                return None
            if level == u.shift:
                return hull([zero(u.n)])
            return scale_body(u.body, level - u.shift)
        if u.kind == SpecialKind.INDICATOR:
            return u.body if level >= u.shift else None
        u = as_pacf(u)
    rows = [(a, level - b) for a, b in u.pieces]
    if isinstance(u, PacfRestricted):
        rows += list(u.domain.halfspaces)
    gen = cddlib.generators(u.n, rows)
    if gen.is_empty:
        return None
    if not gen.is_bounded:
        raise Unbounded("sublevel set of a non-coercive function")
    return PolytopeV(n=u.n, vertices=tuple(sorted(set(gen.vertices))))


def sublevel(u: ConvexFn, t: Number) -> Optional[PolytopeH]:
    """{x : u(x) <= t} in canonical H-form, or None when empty"""
    body = sublevel_body(u, t)
    return to_hrep(body) if body is not None else None
