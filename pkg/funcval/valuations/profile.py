"""
Sublevel Volume Profile

V(t) = V_n({u <= t}) as an exact piecewise polynomial in t. Between two
consecutive heights of epigraph vertices the combinatorial type of the
sublevel set is fixed, so V is a polynomial of degree at most n there and
n + 1 exact volumes determine it.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from funcval.core.logging import get_logger
from funcval.convexfn.conjugation import epigraph_vertices, require_coercive
from funcval.convexfn.functions import (
    ConvexFn,
    PacfFinite,
    SpecialFn,
    SpecialKind,
    as_pacf,
    sublevel_body,
)
from funcval.geomkernel.polytope import origin_interior, polar_volume, volume
from funcval.utils.rational import interpolate, poly_derivative, poly_eval

logger = get_logger(__name__)


@dataclass(frozen=True)
class Panel:
    """V(t) = sum c_k (t - start)^k on [start, end]; end None means unbounded"""
    start: Fraction
    end: Optional[Fraction]
    coefficients: Tuple[Fraction, ...]

    def value(self, t: Fraction) -> Fraction:
        return poly_eval(self.coefficients, t - self.start)

    def derivative(self) -> Tuple[Fraction, ...]:
        """Coefficients of V' in powers of (t - start)"""
        return poly_derivative(self.coefficients)

    def covers(self, t: Fraction) -> bool:
        return self.start <= t and (self.end is None or t <= self.end)


@dataclass(frozen=True)
class VolumeProfile:
    """
    Exact distribution function of Lebesgue measure under u

    minimum is min u, atom is V(min u); panels tile [min u, inf) in order.
    """
    n: int
    minimum: Fraction
    atom: Fraction
    panels: Tuple[Panel, ...]

    def value(self, t: Fraction) -> Fraction:
        t = Fraction(t)
        if t < self.minimum:
            return Fraction(0)
        for panel in self.panels:
            if panel.covers(t):
                return panel.value(t)
        return self.atom


def _fit_panel(u: ConvexFn, n: int, start: Fraction, end: Optional[Fraction]) -> Panel:
    step = (end - start) / n if end is not None else Fraction(1)
    nodes = [start + j * step for j in range(n + 1)]
    volumes = []
    for t in nodes:
        body = sublevel_body(u, t)
        volumes.append(volume(body) if body is not None else Fraction(0))
    return Panel(start=start, end=end, coefficients=interpolate([t - start for t in nodes], volumes))


def volume_profile(u: ConvexFn) -> VolumeProfile:
    """
    Exact sublevel volume profile of u

    Cone functions give (t - s)^n V_n(K) and shifted indicators a single
    atom V_n(K) at the shift; support functions of bodies around the origin
    are cone functions of the polar. Piece-list functions get one panel per gap
    between epigraph vertex heights and a final unbounded panel.

    Raises:
        NotCoercive: A finite function that is not coercive
    """
    if isinstance(u, SpecialFn):
        if u.kind == SpecialKind.CONE:
            coefficients = (Fraction(0),) * u.n + (volume(u.body),)
            return VolumeProfile(u.n, u.shift, Fraction(0), (Panel(u.shift, None, coefficients),))
        if u.kind == SpecialKind.INDICATOR:
            return VolumeProfile(u.n, u.shift, volume(u.body), ())
        if origin_interior(u.body):
            # h(K, .) - s is the cone function of K* shifted by -s
            coefficients = (Fraction(0),) * u.n + (polar_volume(u.body),)
            return VolumeProfile(u.n, -u.shift, Fraction(0), (Panel(-u.shift, None, coefficients),))

    pacf = as_pacf(u)
    if isinstance(pacf, PacfFinite):
        require_coercive(pacf)
    heights = sorted({s for _, s in epigraph_vertices(pacf)})
    minimum = heights[0]
    bottom = sublevel_body(pacf, minimum)
    atom = volume(bottom) if bottom is not None else Fraction(0)

    panels: List[Panel] = []
    for start, end in zip(heights, heights[1:]):
        panels.append(_fit_panel(pacf, pacf.n, start, end))
    panels.append(_fit_panel(pacf, pacf.n, heights[-1], None))
    logger.debug(f"Volume profile with {len(panels)} panels from min {minimum}")
    return VolumeProfile(pacf.n, minimum, atom, tuple(panels))
