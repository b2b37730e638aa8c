"""
Seeded Input Generators

Random coercive piecewise-affine functions, random bodies around the
origin and admissible pairs (u, v) whose pointwise minimum is convex.
Pairs come from three families:

  a. cone functions of the two halves of a body split by a slab
  b. vertical shifts u, u + c
  c. the cut cone u^b_{delta,rho} against a translated cone of T_delta

Every draw is a pure function of its seed.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Optional

import numpy as np

from funcval.core.errors import FuncvalError, ParameterOutOfRange
from funcval.core.logging import get_logger
from funcval.convexfn.functions import ConvexFn, PacfFinite, cone, finite, pieces_of
from funcval.convexfn.lattice import NonConvex, min_fn
from funcval.convexfn.transforms import add_constant, translate_fn
from funcval.geomkernel.bodies import cross, cube, t_delta, x_delta
from funcval.geomkernel.polytope import PolytopeV, hull, intersect_halfspace, to_vrep
from funcval.utils.rational import scale as scale_point
from funcval.utils.rational import unit

logger = get_logger(__name__)

MAX_ATTEMPTS = 50


class PairFamily(str, Enum):
    """Constructions with a convex pointwise minimum"""
    CONE_SPLIT = "cone_split"
    SHIFT = "shift"
    CUT_CONE = "cut_cone"


@dataclass
class GeneratedPair:
    """Admissible pair with the parameters that produced it"""
    u: ConvexFn
    v: ConvexFn
    family: PairFamily
    params: Dict[str, Any] = field(default_factory=dict)


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_fraction(rng: np.random.Generator, low: int, high: int, denominator: int = 4) -> Fraction:
    """Rational in [low, high] on the grid 1/denominator"""
    return Fraction(int(rng.integers(low * denominator, high * denominator + 1)), denominator)


def random_function(n: int, rng: np.random.Generator, max_pieces: int = 8) -> PacfFinite:
    """
    Random finite coercive function with at most max_pieces pieces

    The slopes contain a scaled +-e_i pair on every axis, so the origin is
    interior to their hull.
    """
    if max_pieces < 2 * n:
        raise ParameterOutOfRange(f"a coercive function on R^{n} needs at least {2 * n} pieces")
    pieces = []
    for i in range(n):
        for sign in (1, -1):
            slope = scale_point(unit(n, i), Fraction(sign * int(rng.integers(1, 3))))
            pieces.append((slope, random_fraction(rng, -1, 1)))
    for _ in range(int(rng.integers(0, max_pieces - 2 * n + 1))):
        slope = tuple(Fraction(int(rng.integers(-2, 3))) for _ in range(n))
        if any(slope):
            pieces.append((slope, random_fraction(rng, -2, 0)))
    return finite(pieces)


def random_body(n: int, rng: np.random.Generator, extra_points: int = 4) -> PolytopeV:
    """Random rational polytope containing a neighborhood of the origin"""
    points = [scale_point(v, random_fraction(rng, 1, 2, 2)) for v in cross(n).vertices]
    for _ in range(extra_points):
        points.append(tuple(random_fraction(rng, -2, 2) for _ in range(n)))
    return hull(points)


def _cone_split(n: int, rng: np.random.Generator) -> GeneratedPair:
    choice = int(rng.integers(0, 3))
    if choice == 0 and n >= 2:
        delta = Fraction(1, 4) if n <= 2 else Fraction(1, 2 * n)
        body = t_delta(n, delta)
    elif choice == 1:
        body = cube(n)
    else:
        body = random_body(n, rng)
    s = random_fraction(rng, 0, 1, 8) or Fraction(1, 8)
    shift = random_fraction(rng, -1, 1)
    e1 = unit(n, 0)
    K = to_vrep(intersect_halfspace(body, e1, s))
    L = to_vrep(intersect_halfspace(body, scale_point(e1, Fraction(-1)), s))
    return GeneratedPair(cone(K, shift), cone(L, shift), PairFamily.CONE_SPLIT, {"s": s, "shift": shift})


def _shift(n: int, rng: np.random.Generator) -> GeneratedPair:
    u = random_function(n, rng)
    c = random_fraction(rng, 0, 2) or Fraction(1, 4)
    return GeneratedPair(u, add_constant(u, c), PairFamily.SHIFT, {"c": c})


def cut_cone_pair(n: int, delta: Fraction, rho: Fraction, b: Fraction) -> GeneratedPair:
    """
    u^b_{delta,rho} and l_{T_delta} o tau_{b x_delta}^-1 + b

    epi u^b is epi l_{T_delta} cut by {x_1 <= b(1 + delta) + rho(s - b)}, so
    u^b adds the piece (x_1 - b(1 + delta) + rho b) / rho to the cone pieces.
    Their pointwise minimum is l_{T_delta}.
    """
    body = t_delta(n, delta)
    base = cone(body)
    cut = (scale_point(unit(n, 0), 1 / rho), (rho * b - b * (1 + delta)) / rho)
    u = finite(list(pieces_of(base)) + [cut])
    v = add_constant(translate_fn(base, scale_point(x_delta(n, delta), b)), b)
    return GeneratedPair(u, v, PairFamily.CUT_CONE, {"delta": delta, "rho": rho, "b": b})


def _cut_cone(n: int, rng: np.random.Generator) -> GeneratedPair:
    upper = Fraction(1) if n <= 2 else Fraction(1, n - 2)
    delta = upper * random_fraction(rng, 1, 3, 1) / 4
    rho = random_fraction(rng, 1, 3, 1) / 4
    b = random_fraction(rng, 1, 2, 2)
    return cut_cone_pair(n, delta, rho, b)


_FAMILIES = {
    PairFamily.CONE_SPLIT: _cone_split,
    PairFamily.SHIFT: _shift,
    PairFamily.CUT_CONE: _cut_cone,
}


def generate_pair(n: int, seed: int, family: Optional[PairFamily] = None) -> GeneratedPair:
    """
    Admissible pair (u, v) with u ^ v convex

    Args:
        n: Dimension, at most 3
        seed: Seed of the draw
        family: Fixed family; drawn from the seed when absent

    Returns:
        GeneratedPair whose minimum passed the exact convexity test
    """
    if not 1 <= n <= 3:
        raise ParameterOutOfRange(f"pairs are generated for 1 <= n <= 3, got {n}")
    rng = rng_for(seed)
    for attempt in range(MAX_ATTEMPTS):
        chosen = family or list(PairFamily)[int(rng.integers(0, 3))]
        if chosen == PairFamily.CUT_CONE and n < 2:
            chosen = PairFamily.SHIFT
        try:
            pair = _FAMILIES[chosen](n, rng)
        except FuncvalError as e:
            logger.debug(f"Degenerate {chosen.value} draw (attempt {attempt}): {e.message}")
            continue
        if isinstance(min_fn(pair.u, pair.v), NonConvex):
            logger.debug(f"Non-convex {chosen.value} draw (attempt {attempt}), regenerating")
            continue
        return pair
    raise ParameterOutOfRange(f"no admissible pair after {MAX_ATTEMPTS} draws for seed {seed}")
