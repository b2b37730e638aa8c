"""
Function Transforms

Exact piece-list rewrites for translation, unimodular change of
variables, vertical shifts, homogeneous dilation and the origin hull
u_0 = (u* v 0)*.
"""

from fractions import Fraction
from typing import Sequence

from funcval.core.errors import DimensionMismatch, ParameterOutOfRange
from funcval.convexfn.conjugation import conjugate, require_coercive
from funcval.convexfn.functions import (
    ConvexFn,
    PacfRestricted,
    SpecialFn,
    SpecialKind,
    as_pacf,
    cone,
    finite,
    indicator,
    restricted,
    support,
)
from funcval.geomkernel.actions import UnimodularMap, apply_map, scale, translate
from funcval.utils.rational import Number, dot, matvec, to_fraction, to_point, zero


def _check_dimension(u: ConvexFn, n: int) -> None:
    if u.n != n:
        raise DimensionMismatch(f"transform of size {n} on a function over R^{u.n}")


def translate_fn(u: ConvexFn, y: Sequence[Number]) -> ConvexFn:
    """x -> u(x - y)"""
    shift = to_point(y)
    _check_dimension(u, len(shift))
    if isinstance(u, SpecialFn) and u.kind == SpecialKind.INDICATOR:
        return indicator(translate(u.body, shift), u.shift)
    w = as_pacf(u)
    pieces = [(a, b - dot(a, shift)) for a, b in w.pieces]
    if isinstance(w, PacfRestricted):
        return restricted(pieces, translate(w.domain, shift))
    return finite(pieces)


def compose_linear(u: ConvexFn, phi: UnimodularMap) -> ConvexFn:
    """u o phi^-1; slopes move by phi^-T, domains by phi"""
    _check_dimension(u, phi.n)
    if isinstance(u, SpecialFn):
        if u.kind == SpecialKind.CONE:
            return cone(apply_map(phi, u.body), u.shift)
        if u.kind == SpecialKind.INDICATOR:
            return indicator(apply_map(phi, u.body), u.shift)
        return support(apply_map(phi.inverse().transpose(), u.body), u.shift)
    dual = phi.inverse().transpose()
    pieces = [(matvec(dual.matrix, a), b) for a, b in u.pieces]
    if isinstance(u, PacfRestricted):
        return restricted(pieces, apply_map(phi, u.domain))
    return finite(pieces)


def add_constant(u: ConvexFn, t: Number) -> ConvexFn:
    """u + t"""
    c = to_fraction(t)
    if isinstance(u, SpecialFn):
        shift = u.shift - c if u.kind == SpecialKind.SUPPORT else u.shift + c
        return SpecialFn(u.kind, u.body, shift)
    pieces = [(a, b + c) for a, b in u.pieces]
    if isinstance(u, PacfRestricted):
        return restricted(pieces, u.domain)
    return finite(pieces)


def scale_hom(u: ConvexFn, lam: Number) -> ConvexFn:
    """u_lam(x) = u(x / lam) for lam > 0"""
    factor = to_fraction(lam)
    if factor <= 0:
        raise ParameterOutOfRange(f"dilation factor {factor} must be positive")
    if isinstance(u, SpecialFn):
        if u.kind == SpecialKind.SUPPORT:
            return SpecialFn(u.kind, scale(u.body, 1 / factor), u.shift)
        return SpecialFn(u.kind, scale(u.body, factor), u.shift)
    pieces = [(tuple(x / factor for x in a), b) for a, b in u.pieces]
    if isinstance(u, PacfRestricted):
        return restricted(pieces, scale(u.domain, factor))
    return finite(pieces)


def u_zero(u: ConvexFn) -> ConvexFn:
    """
    (u* v 0)*, the largest convex minorant of u that is <= 0 at the origin

    Raises:
        NotCoercive: u is not coercive
    """
    require_coercive(u)
    if isinstance(u, SpecialFn) and u.kind == SpecialKind.CONE:
        return cone(u.body, min(u.shift, Fraction(0)))
    dual = as_pacf(conjugate(u))
    if not isinstance(dual, PacfRestricted):
        raise ParameterOutOfRange("u_zero needs a finite coercive function")
    raised = restricted(dual.pieces + ((zero(u.n), Fraction(0)),), dual.domain)
    return conjugate(raised)
