"""
Quadrature Helpers

A scipy.integrate.quad wrapper that turns integration warnings into
QuadratureNotConverged, and a Stieltjes midpoint integrator with
Richardson extrapolation for integrals of the form int zeta dV with an
exact volume profile V.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from scipy import integrate

from funcval.core.config import settings
from funcval.core.errors import QuadratureNotConverged


@dataclass
class QuadResult:
    """Integral estimate with its error estimate"""
    value: float
    error: float
    evaluations: int = 0


def adaptive_quad(f: Callable[[float], float], a: float, b: float,
                  points: Optional[Sequence[float]] = None,
                  epsrel: Optional[float] = None, epsabs: float = 1e-14,
                  limit: int = 200) -> QuadResult:
    """
    Adaptive Gauss-Kronrod integral of f over [a, b]

    Args:
        f: Integrand
        a, b: Finite bounds
        points: Breakpoints inside (a, b) where f is not smooth
        epsrel: Relative tolerance (settings.psi_quad_tol by default)

    Raises:
        QuadratureNotConverged: scipy reported an IntegrationWarning or the
            error estimate exceeds the tolerance
    """
    epsrel = settings.psi_quad_tol if epsrel is None else epsrel
    if b <= a:
        return QuadResult(0.0, 0.0)
    inner = sorted(p for p in (points or ()) if a < p < b)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, error, info = integrate.quad(
                f, a, b, points=inner or None, epsrel=epsrel, epsabs=epsabs,
                limit=limit, full_output=1,
            )[:3]
        except integrate.IntegrationWarning as e:
            raise QuadratureNotConverged(f"quad on [{a}, {b}]: {e}")
    if error > max(epsrel * abs(value), epsabs) * 10:
        raise QuadratureNotConverged(f"quad error {error:.3e} on [{a}, {b}] exceeds tolerance")
    return QuadResult(value, error, info.get("neval", 0))


def _midpoint_sum(zeta: Callable[[float], float], profile: Callable[[Fraction], Fraction],
                  a: Fraction, b: Fraction, m: int) -> float:
    h = (b - a) / m
    total = 0.0
    previous = profile(a)
    for i in range(m):
        right = a + (i + 1) * h
        current = profile(right)
        total += zeta(float(a + (i + Fraction(1, 2)) * h)) * float(current - previous)
        previous = current
    return total


def stieltjes_richardson(zeta: Callable[[float], float], profile: Callable[[Fraction], Fraction],
                         a: Fraction, b: Fraction, tol: Optional[float] = None,
                         initial_panels: Optional[int] = None,
                         max_refinements: Optional[int] = None) -> QuadResult:
    """
    int_a^b zeta(t) dV(t) for smooth zeta and polynomial V on [a, b]

    Midpoint sums S_m at rational nodes are doubled and combined as
    R = (4 S_2m - S_m) / 3 until successive R differ by less than tol
    relative.

    Raises:
        QuadratureNotConverged: The refinement cap is reached
    """
    tol = settings.quad_tol if tol is None else tol
    m = initial_panels or settings.quad_initial_panels
    cap = settings.quad_max_refinements if max_refinements is None else max_refinements
    if b <= a:
        return QuadResult(0.0, 0.0)

    coarse = _midpoint_sum(zeta, profile, a, b, m)
    evaluations = m
    previous = None
    for _ in range(cap):
        m *= 2
        fine = _midpoint_sum(zeta, profile, a, b, m)
        evaluations += m
        extrapolated = (4 * fine - coarse) / 3
        if previous is not None:
            gap = abs(extrapolated - previous)
            if gap <= max(tol * abs(extrapolated), 1e-15):
                return QuadResult(extrapolated, gap, evaluations)
        previous, coarse = extrapolated, fine
    raise QuadratureNotConverged(f"Stieltjes sums on [{a}, {b}] did not settle after {cap} refinements")
