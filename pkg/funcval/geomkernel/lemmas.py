"""
Exact Polytope Identities

Checks for the splitting identities of T_delta, the closed-form polar
volume increment, the volume of conv(delta C^n u K), inclusion-exclusion
for V_n and V_n*, and the Mahler product.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial, prod
from typing import Dict, List, Sequence

from funcval.core.errors import OriginNotInterior, ParameterOutOfRange
from funcval.core.logging import get_logger
from funcval.geomkernel.actions import scale, translate
from funcval.geomkernel.bodies import check_t_delta_range, cross, t_delta, x_delta
from funcval.geomkernel.polytope import (
    Polytope,
    as_vrep,
    contains,
    conv_union,
    hull,
    intersect,
    intersect_halfspace,
    origin_interior,
    polar_volume,
    to_vrep,
    volume,
)
from funcval.utils.rational import Number, Point, to_fraction, unit, zero

logger = get_logger(__name__)


@dataclass
class LemmaReport:
    """Outcome of the T_delta splitting checks"""
    params: Dict[str, Fraction]
    union_holds: bool
    intersection_holds: bool
    increment: Fraction
    closed_form: Fraction
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def increment_holds(self) -> bool:
        return self.increment == self.closed_form

    @property
    def passed(self) -> bool:
        return self.union_holds and self.intersection_holds and self.increment_holds


def same_body(P: Polytope, Q: Polytope) -> bool:
    """Exact equality of two polytopes as point sets"""
    return as_vrep(P) == as_vrep(Q)


def union_equals(A: Polytope, B: Polytope, C: Polytope) -> bool:
    """
    Exact test of A u B = C for convex polytopes

    conv(A u B) = C together with V(A) + V(B) - V(A n B) = V(C) leaves no
    open gap in C, so the union is all of C.
    """
    if not same_body(conv_union(A, B), C):
        return False
    meet = intersect(A, B)
    overlap = volume(meet) if meet is not None else Fraction(0)
    if not as_vrep(C).full_dimensional:
        return all(v in as_vrep(A).vertices or v in as_vrep(B).vertices for v in as_vrep(C).vertices)
    return volume(A) + volume(B) - overlap == volume(C)


def polar_increment_closed_form(n: int, delta: Fraction, rho: Fraction) -> Fraction:
    """(1/(n! delta^(n-2))) ((1+delta)/(delta(1-(n-2)delta))) (1/rho - 1/(1+delta))"""
    lead = Fraction(1, factorial(n)) / delta ** (n - 2)
    ratio = (1 + delta) / (delta * (1 - (n - 2) * delta))
    return lead * ratio * (1 / rho - 1 / (1 + delta))


def lemma_T_delta_suite(n: int, delta: Number, rho: Number, b: Number, t: Number) -> LemmaReport:
    """
    Exact splitting identities for tT_delta

    With P = tT_delta n {x_1 <= b(1+delta) + rho(t-b)} and
    S = (t-b)T_delta + b x_delta:
      P u S = tT_delta
      P n S = (t-b)(T_delta n {x_1 <= rho}) + b x_delta
      V*(T_delta n {x_1 <= rho}) - V*(T_delta) matches its closed form

    Raises:
        ParameterOutOfRange: delta, rho, b or t outside their admissible ranges
    """
    d, r, b_, t_ = (to_fraction(v) for v in (delta, rho, b, t))
    if n < 2:
        raise ParameterOutOfRange("the splitting identities need n >= 2")
    check_t_delta_range(n, d)
    if not 0 < r < 1:
        raise ParameterOutOfRange(f"rho={r} outside (0, 1)")
    if not (b_ > 0 and t_ >= b_):
        raise ParameterOutOfRange(f"need t >= b > 0, got b={b_}, t={t_}")

    body = t_delta(n, d)
    e1 = unit(n, 0)
    shift = tuple(b_ * x for x in x_delta(n, d))
    big = scale(body, t_)
    cut = b_ * (1 + d) + r * (t_ - b_)
    piece = intersect_halfspace(big, e1, cut)

    if t_ == b_:
        split = hull([shift])
    else:
        split = translate(scale(body, t_ - b_), shift)

    union_ok = union_equals(piece, split, big)

    cut_body = intersect_halfspace(body, e1, r)
    if t_ == b_:
        expected_meet = hull([shift])
    else:
        expected_meet = translate(scale(cut_body, t_ - b_), shift)
    meet = intersect(piece, split)
    meet_ok = meet is not None and same_body(meet, expected_meet)

    increment = polar_volume(to_vrep(cut_body)) - polar_volume(body)
    closed = polar_increment_closed_form(n, d, r)
    report = LemmaReport(
        params={"n": Fraction(n), "delta": d, "rho": r, "b": b_, "t": t_},
        union_holds=union_ok,
        intersection_holds=meet_ok,
        increment=increment,
        closed_form=closed,
    )
    report.checks = {
        "union": report.union_holds,
        "intersection": report.intersection_holds,
        "polar_increment": report.increment_holds,
    }
    logger.debug(f"T_delta lemma n={n} delta={d} rho={r} b={b_} t={t_}: {report.checks}")
    return report


def conv_union_formula(delta: Number, c: Sequence[Number]) -> Fraction:
    """(1/n!) prod(max(c_i, delta) + delta)"""
    d = to_fraction(delta)
    coefficients = [to_fraction(x) for x in c]
    return prod((max(ci, d) + d for ci in coefficients), start=Fraction(1)) / factorial(len(coefficients))


def conv_union_volume(delta: Number, c: Sequence[Number]) -> Fraction:
    """V_n(conv(delta C^n u conv{0, c_1 e_1, ..., c_n e_n})) computed geometrically"""
    d = to_fraction(delta)
    coefficients = [to_fraction(x) for x in c]
    if d <= 0 or any(ci <= 0 for ci in coefficients):
        raise ParameterOutOfRange("delta and all c_i must be positive")
    n = len(coefficients)
    corner = hull([zero(n)] + [tuple(ci * x for x in unit(n, i)) for i, ci in enumerate(coefficients)])
    return volume(conv_union(scale(cross(n), d), corner))


def hull_samples(P: Polytope, denominator: int = 4) -> List[Point]:
    """Rational points k/m along every segment between two vertices of P, and its vertex centroid"""
    vertices = as_vrep(P).vertices
    samples = [tuple(sum(coords, Fraction(0)) / len(vertices) for coords in zip(*vertices))]
    for v, w in combinations(vertices, 2):
        for k in range(1, denominator):
            weight = Fraction(k, denominator)
            samples.append(tuple(weight * a + (1 - weight) * b for a, b in zip(v, w)))
    return samples


def body_valuation_check(K: Polytope, L: Polytope) -> Dict[str, bool]:
    """
    Inclusion-exclusion for V_n and V_n* on a pair with convex union

    The union is accepted as convex when every hull sample of conv(K u L)
    lies in K or in L; the volume identity is then evaluated on its own.

    Returns:
        Exact booleans for the volume and polar-volume identities; the
        polar identity is only checked when the origin is interior to K n L

    Raises:
        ParameterOutOfRange: a point of conv(K u L) lies outside K and L
    """
    union = conv_union(K, L)
    outside = [x for x in hull_samples(union) if not (contains(K, x) or contains(L, x))]
    if outside:
        raise ParameterOutOfRange(f"K u L is not convex: {len(outside)} hull samples lie outside both")
    meet = intersect(K, L)
    meet_volume = volume(meet) if meet is not None else Fraction(0)
    result = {"volume": volume(union) + meet_volume == volume(K) + volume(L)}
    if meet is not None and origin_interior(meet):
        result["polar_volume"] = (
            polar_volume(union) + polar_volume(to_vrep(meet)) == polar_volume(K) + polar_volume(L)
        )
    return result


def mahler_product(K: Polytope) -> Fraction:
    """V_n(K) V_n(K*) for a body with the origin in its interior"""
    if not origin_interior(K):
        raise OriginNotInterior("Mahler product needs the origin in the interior")
    return volume(K) * polar_volume(K)


def mahler_lower_bound(n: int) -> Fraction:
    """4^n / n!, attained by the cube and the cross-polytope"""
    return Fraction(4 ** n, factorial(n))
