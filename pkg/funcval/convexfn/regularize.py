"""
Regularization and Epi-Convergence

reg_delta u = (u* + I_{delta^-1 Q^n})*, the bridge from indicators and
other special kinds into finite coercive max-affine functions, and the
sublevel-set Hausdorff diagnostic for epi-convergence.
"""

from typing import Iterable

from funcval.core.errors import GridBelowMin, ParameterOutOfRange, UnsupportedInput
from funcval.core.logging import get_logger
from funcval.convexfn.conjugation import conjugate, min_value
from funcval.convexfn.functions import (
    ConvexFn,
    PacfFinite,
    PacfRestricted,
    as_pacf,
    restricted,
    sublevel,
)
from funcval.geomkernel.actions import scale
from funcval.geomkernel.bodies import cube
from funcval.geomkernel.polytope import hausdorff_distance, intersect
from funcval.utils.rational import Number, to_fraction

logger = get_logger(__name__)


def reg_delta(u: ConvexFn, delta: Number) -> PacfFinite:
    """
    Regularize by cutting the conjugate's domain to delta^-1 Q^n

    Args:
        u: Finite coercive function or a special kind
        delta: Positive regularization parameter

    Returns:
        Finite coercive PacfFinite
    """
    d = to_fraction(delta)
    if d <= 0:
        raise ParameterOutOfRange(f"delta={d} must be positive")
    if isinstance(u, PacfRestricted):
        raise UnsupportedInput("reg_delta takes finite functions and special kinds")
    window = scale(cube(u.n), 1 / d)
    dual = as_pacf(conjugate(u))
    if isinstance(dual, PacfRestricted):
        domain = intersect(dual.domain, window)
    else:
        domain = window.hrep
    result = conjugate(restricted(dual.pieces, domain))
    logger.debug(f"reg_delta: {len(dual.pieces)} dual pieces -> {len(result.pieces)} pieces")
    return result


def epiconv_distance(u: ConvexFn, v: ConvexFn, t_grid: Iterable[Number]) -> float:
    """
    Largest Hausdorff distance between matching sublevel sets

    Raises:
        GridBelowMin: Some grid value lies below max(min u, min v)
    """
    floor = max(min_value(u)[0], min_value(v)[0])
    levels = [to_fraction(t) for t in t_grid]
    low = [t for t in levels if t < floor]
    if low:
        raise GridBelowMin(f"grid value {low[0]} below the minimum {floor}")
    distance = 0.0
    for t in levels:
        distance = max(distance, hausdorff_distance(sublevel(u, t), sublevel(v, t)))
    return distance
