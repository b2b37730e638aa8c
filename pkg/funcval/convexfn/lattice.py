"""
Lattice Operations

Pointwise maximum and minimum of piecewise-affine convex functions. The
minimum is only convex for special pairs; min_fn decides this exactly and
returns a NonConvex marker otherwise.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

from funcval.core.errors import DimensionMismatch, EmptyResult, UnsupportedInput
from funcval.core.logging import get_logger
from funcval.convexfn.conjugation import conjugate
from funcval.convexfn.functions import (
    ConvexFn,
    PacfFinite,
    PacfRestricted,
    Piece,
    as_pacf,
    finite,
    restricted,
)
from funcval.geomkernel.polytope import intersect
from funcval.utils import cddlib
from funcval.utils.rational import Point

logger = get_logger(__name__)


@dataclass(frozen=True)
class NonConvex:
    """Marker returned by min_fn when u ^ v is not convex"""
    reason: str = "pointwise minimum is not convex"


def _same_class(u: ConvexFn, v: ConvexFn):
    if u.n != v.n:
        raise DimensionMismatch(f"functions on R^{u.n} and R^{v.n}")
    u, v = as_pacf(u), as_pacf(v)
    if type(u) is not type(v):
        raise UnsupportedInput("lattice operations need two functions of the same class")
    return u, v


def max_fn(u: ConvexFn, v: ConvexFn) -> Union[PacfFinite, PacfRestricted]:
    """
    Pointwise maximum u v v

    Raises:
        EmptyResult: Two restricted functions with disjoint domains
    """
    u, v = _same_class(u, v)
    if isinstance(u, PacfFinite):
        return finite(u.pieces + v.pieces)
    domain = intersect(u.domain, v.domain)
    if domain is None:
        raise EmptyResult("domains of the restricted functions are disjoint")
    return restricted(u.pieces + v.pieces, domain)


def _lift(normal: Sequence[Fraction], s: int, eps: int) -> Point:
    return tuple(normal) + (Fraction(s), Fraction(eps))


def _gap_positive(n: int, rows: List[cddlib.Halfspace]) -> bool:
    """max eps over (x, s, eps) subject to rows and eps <= 1 is positive"""
    rows = rows + [(_lift([0] * n, 0, 1), Fraction(1))]
    objective = (Fraction(0),) * (n + 1) + (Fraction(1),)
    result = cddlib.maximize(n + 2, rows, objective)
    return result.status == "optimal" and result.value > 0


def _below(pieces: Sequence[Piece]) -> List[cddlib.Halfspace]:
    # s + eps <= a.x + b
    return [(_lift([-x for x in a], 1, 1), b) for a, b in pieces]


def _exceeds_envelope(u, v, envelope) -> bool:
    """
    True when some x has envelope(x) < min(u(x), v(x))

    The envelope never exceeds u ^ v, so the minimum is convex exactly when
    no such x exists. Each case is an exact LP in (x, s, eps).
    """
    n = u.n
    base = [(_lift(c, -1, 0), -d) for c, d in envelope.pieces]
    if isinstance(envelope, PacfRestricted):
        base += [(_lift(normal, 0, 0), offset) for normal, offset in envelope.domain.halfspaces]
    u_pieces = [p for p in u.pieces if p not in envelope.pieces]
    v_pieces = [p for p in v.pieces if p not in envelope.pieces]

    if isinstance(u, PacfFinite):
        for i in u_pieces:
            for j in v_pieces:
                if _gap_positive(n, base + _below([i, j])):
                    return True
        return False

    inside_u = [(_lift(normal, 0, 0), offset) for normal, offset in u.domain.halfspaces]
    inside_v = [(_lift(normal, 0, 0), offset) for normal, offset in v.domain.halfspaces]
    outside_u = [(_lift([-x for x in normal], 0, 1), -offset) for normal, offset in u.domain.halfspaces]
    outside_v = [(_lift([-x for x in normal], 0, 1), -offset) for normal, offset in v.domain.halfspaces]

    for i in u_pieces:
        for j in v_pieces:
            if _gap_positive(n, base + inside_u + inside_v + _below([i, j])):
                return True
    for i in u_pieces:
        for g in outside_v:
            if _gap_positive(n, base + inside_u + _below([i]) + [g]):
                return True
    for j in v_pieces:
        for g in outside_u:
            if _gap_positive(n, base + inside_v + _below([j]) + [g]):
                return True
    for g in outside_u:
        for h in outside_v:
            if _gap_positive(n, base + [g, h]):
                return True
    return False


def min_fn(u: ConvexFn, v: ConvexFn) -> Union[PacfFinite, PacfRestricted, NonConvex]:
    """
    Pointwise minimum u ^ v when it is convex

    The candidate is the convex envelope (u* v v*)*; its pieces are the
    result whenever it reproduces min(u, v) everywhere.

    Returns:
        Canonical function of the input class, or NonConvex
    """
    u, v = _same_class(u, v)
    try:
        envelope = conjugate(max_fn(conjugate(u), conjugate(v)))
    except EmptyResult:
        return NonConvex("conjugates have disjoint domains")
    if _exceeds_envelope(u, v, envelope):
        logger.debug(f"min_fn: envelope with {len(envelope.pieces)} pieces misses min(u, v)")
        return NonConvex()
    return envelope
