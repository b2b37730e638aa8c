"""
Standard Bodies

Exact vertex lists for the simplex, the shifted simplex T_delta, cubes,
boxes, cross-polytopes and rational inscribed polytopes standing in for
the Euclidean ball.
"""

import math
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from funcval.core.config import settings
from funcval.core.errors import ParameterOutOfRange
from funcval.geomkernel.polytope import PolytopeV, hull
from funcval.utils.rational import Number, Point, to_fraction, unit, zero


class BodyKind(str, Enum):
    """Named body families"""
    SIMPLEX = "simplex"
    T_DELTA = "t_delta"
    CUBE = "cube"
    BOX = "box"
    CROSS = "cross"
    BALL = "ball"


def simplex(n: int) -> PolytopeV:
    """T^n = conv{0, e_1, ..., e_n}"""
    return hull([zero(n)] + [unit(n, i) for i in range(n)])


def check_t_delta_range(n: int, delta: Fraction) -> None:
    """0 < delta < 1 for n <= 2, 0 < delta < 1/(n-2) otherwise"""
    upper = Fraction(1) if n <= 2 else Fraction(1, n - 2)
    if not 0 < delta < upper:
        raise ParameterOutOfRange(f"delta={delta} outside (0, {upper}) for n={n}")


def t_delta(n: int, delta: Number) -> PolytopeV:
    """T_delta = (1 + 2 delta) T^n - delta e, with e = (1, ..., 1)"""
    d = to_fraction(delta)
    check_t_delta_range(n, d)
    base = [zero(n)] + [unit(n, i) for i in range(n)]
    return hull([tuple((1 + 2 * d) * x - d for x in p) for p in base])


def x_delta(n: int, delta: Number) -> Point:
    """The vertex direction (1 + delta, -delta, ..., -delta)"""
    d = to_fraction(delta)
    return (1 + d,) + tuple(-d for _ in range(n - 1))


def cube(n: int) -> PolytopeV:
    """Q^n = [-1, 1]^n"""
    corners = [[]]
    for _ in range(n):
        corners = [c + [s] for c in corners for s in (-1, 1)]
    return hull(corners)


def box(n: int, lam: Number) -> PolytopeV:
    """[0, lam]^n"""
    side = to_fraction(lam)
    if side <= 0:
        raise ParameterOutOfRange(f"box side {side} must be positive")
    corners = [[]]
    for _ in range(n):
        corners = [c + [s] for c in corners for s in (Fraction(0), side)]
    return hull(corners)


def cross(n: int) -> PolytopeV:
    """C^n = conv{+-e_1, ..., +-e_n}"""
    points = []
    for i in range(n):
        e = unit(n, i)
        points.append(e)
        points.append(tuple(-x for x in e))
    return hull(points)


def _sphere_point(direction: Sequence[float], precision: int) -> Point:
    """
    Rational point exactly on the unit sphere near a unit direction

    Stereographic coordinates are rationalized, then mapped back, so the
    result satisfies |x|^2 = 1 in exact arithmetic.
    """
    u = np.asarray(direction, dtype=float)
    u = u / np.linalg.norm(u)
    sign = 1 if u[-1] >= 0 else -1
    p = [Fraction(float(c) / (1 + sign * float(u[-1]))).limit_denominator(precision) for c in u[:-1]]
    q = sum(c * c for c in p)
    head = tuple(2 * c / (1 + q) for c in p)
    return head + (sign * (1 - q) / (1 + q),)


def _ball_directions(n: int, count: int) -> List[np.ndarray]:
    if n == 2:
        angles = 2 * np.pi * np.arange(count) / count
        return [np.array([np.cos(a), np.sin(a)]) for a in angles]
    if n == 3:
        golden = np.pi * (3 - math.sqrt(5))
        directions = []
        for k in range(count):
            z = 1 - 2 * (k + 0.5) / count
            r = math.sqrt(max(0.0, 1 - z * z))
            directions.append(np.array([r * np.cos(golden * k), r * np.sin(golden * k), z]))
        return directions
    rng = np.random.default_rng(count)
    return [rng.standard_normal(n) for _ in range(count)]


def ball(n: int, vertices: Optional[int] = None, precision: Optional[int] = None) -> PolytopeV:
    """
    Inscribed rational polytope standing in for the unit ball

    Args:
        n: Dimension
        vertices: Number of sample directions (settings.ball_vertices by default)
        precision: Max denominator of the stereographic parameters

    Returns:
        PolytopeV whose vertices lie exactly on the unit sphere; in the
        plane with a vertex count divisible by 4 it is exactly a count-gon
    """
    count = vertices or settings.ball_vertices
    precision = precision or settings.ball_precision
    if n == 1:
        return cube(1)
    if count < n + 1:
        raise ParameterOutOfRange(f"ball needs at least {n + 1} vertices")
    points = [_sphere_point(d, precision) for d in _ball_directions(n, count)]
    # keeps the origin interior; a planar grid of 4k directions already holds +-e_i
    if n != 2 or count % 4:
        points += list(cross(n).vertices)
    return hull(points)


def standard_body(kind: str, n: int, params: Optional[Dict[str, Number]] = None) -> PolytopeV:
    """
    Build a named body

    Args:
        kind: One of BodyKind
        n: Dimension
        params: delta for t_delta, lam for box, vertices/precision for ball

    Returns:
        Canonical PolytopeV
    """
    params = params or {}
    if n < 1:
        raise ParameterOutOfRange("dimension must be at least 1")
    try:
        body_kind = BodyKind(kind)
    except ValueError:
        raise ParameterOutOfRange(f"unknown body kind '{kind}'")

    if body_kind == BodyKind.SIMPLEX:
        return simplex(n)
    if body_kind == BodyKind.T_DELTA:
        return t_delta(n, params.get("delta", Fraction(1, 4)))
    if body_kind == BodyKind.CUBE:
        return cube(n)
    if body_kind == BodyKind.BOX:
        return box(n, params.get("lam", 1))
    if body_kind == BodyKind.CROSS:
        return cross(n)
    vertices = params.get("vertices")
    precision = params.get("precision")
    return ball(n, int(vertices) if vertices else None, int(precision) if precision else None)
