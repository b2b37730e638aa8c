"""
Valuation Functionals

Z(u) = zeta_0(min u) + int zeta_1(u(x)) dx + int_{dom u*} zeta_2(grad u*(x) . x - u*(x)) dx
on the polyhedral classes, together with the dual valuation Z*(w) = Z(w*),
the dual minimum valuation zeta(-w(0)), the dual Hessian valuation and
the origin-hull volume valuation of u_0 = (u* v 0)*.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from funcval.core.errors import (
    OriginNotInDomain,
    OriginNotInterior,
    ParameterOutOfRange,
    Unbounded,
)
from funcval.core.logging import get_logger
from funcval.convexfn.conjugation import conjugate, linearity_cells, min_value, subdivision
from funcval.convexfn.functions import (
    INF,
    ConvexFn,
    PacfRestricted,
    Piece,
    SpecialFn,
    SpecialKind,
    as_pacf,
    evaluate,
)
from funcval.convexfn.transforms import u_zero
from funcval.geomkernel.polytope import origin_interior, volume
from funcval.utils.quadrature import QuadResult, stieltjes_richardson
from funcval.utils.rational import zero
from funcval.valuations.profile import Panel, volume_profile
from funcval.zeta.presets import (
    ZetaKind,
    ZetaRole,
    ZetaSpec,
    kinks,
    support_bound,
    zeta_eval,
    zeta_exact,
)

logger = get_logger(__name__)


@dataclass(frozen=True)
class ValuationSpec:
    """Weight triple of Z on R^n; an absent weight contributes zero"""
    n: int
    zeta0: Optional[ZetaSpec] = None
    zeta1: Optional[ZetaSpec] = None
    zeta2: Optional[ZetaSpec] = None

    def __post_init__(self):
        if self.n < 1:
            raise ParameterOutOfRange(f"dimension n={self.n} must be at least 1")
        slots = ((self.zeta0, ZetaRole.ZETA0), (self.zeta1, ZetaRole.ZETA1), (self.zeta2, ZetaRole.ZETA2))
        for weight, role in slots:
            if weight is None:
                continue
            if weight.role != role:
                raise ParameterOutOfRange(f"weight in slot {role.value} has role {weight.role.value}")
            if weight.kind == ZetaKind.POLY and weight.power < self.n + 1:
                raise ParameterOutOfRange(f"cutoff power {weight.power} must be at least n + 1 = {self.n + 1}")


@dataclass(frozen=True)
class ZComponents:
    """The three summands of Z(u) and the quadrature error of the middle one"""
    z0: float
    z1: float
    z2: float
    z1_error: float = 0.0

    @property
    def total(self) -> float:
        return self.z0 + self.z1 + self.z2


def z0(u: ConvexFn, zeta: ZetaSpec) -> float:
    """
    zeta_0(min u)

    Raises:
        NotCoercive: u is finite but not coercive
    """
    value, _ = min_value(u)
    return zeta_eval(zeta, value)


def _integrate_panel(panel: Panel, zeta: ZetaSpec, a: Fraction, b: Fraction,
                     tol: Optional[float]) -> QuadResult:
    end = support_bound(zeta)
    if end is not None:
        b = min(b, end)
    if b <= a:
        return QuadResult(0.0, 0.0)
    cuts = [a] + sorted(k for k in set(kinks(zeta)) if a < k < b) + [b]
    value = error = 0.0
    evaluations = 0
    for left, right in zip(cuts, cuts[1:]):
        part = stieltjes_richardson(lambda t: zeta_eval(zeta, t), panel.value, left, right, tol=tol)
        value += part.value
        error += part.error
        evaluations += part.evaluations
    return QuadResult(value, error, evaluations)


def _exp_tail(panel: Panel, alpha: Fraction) -> float:
    """int_start^inf e^(-alpha t) V'(t) dt in closed form"""
    a = float(alpha)
    derivative = panel.derivative()
    total = sum(math.factorial(k) * float(c) / a ** (k + 1) for k, c in enumerate(derivative))
    return math.exp(-a * float(panel.start)) * total


def z1(u: ConvexFn, zeta: ZetaSpec, tol: Optional[float] = None) -> QuadResult:
    """
    int zeta_1(u(x)) dx by the layer-cake formula int zeta_1 dV

    V is the exact sublevel volume profile. Its atom at min u contributes
    zeta_1(min u) V(min u); bounded panels are integrated with Stieltjes
    midpoint sums under Richardson refinement, split at the kinks of the
    weight and cut at the end of its support. The unbounded panel of an
    exponential weight is integrated in closed form.

    Args:
        u: Coercive function, restricted function or special kind
        zeta: Weight in the zeta1 role
        tol: Relative tolerance of the refinement (settings.quad_tol)

    Returns:
        QuadResult with the value and the summed error estimate

    Raises:
        NotCoercive: u is finite but not coercive
        QuadratureNotConverged: A panel did not settle
    """
    profile = volume_profile(u)
    value = zeta_eval(zeta, profile.minimum) * float(profile.atom)
    error = 0.0
    evaluations = 0
    for panel in profile.panels:
        if panel.end is not None:
            part = _integrate_panel(panel, zeta, panel.start, panel.end, tol)
        elif zeta.kind == ZetaKind.EXP:
            part = QuadResult(_exp_tail(panel, zeta.alpha), 0.0)
        else:
            part = _integrate_panel(panel, zeta, panel.start, support_bound(zeta), tol)
        value += part.value
        error += part.error
        evaluations += part.evaluations
    logger.debug(f"z1 = {value:.12g} (error {error:.2e}, {evaluations} sums, {len(profile.panels)} panels)")
    return QuadResult(value, error, evaluations)


def _monge_ampere_sum(u: ConvexFn, weight: Callable[[Fraction], object]):
    if isinstance(u, SpecialFn) and u.kind == SpecialKind.INDICATOR:
        raise Unbounded("the Monge-Ampere integral of an indicator diverges")
    return sum((weight(cell.value) * cell.volume for cell in subdivision(u).cells))


def z2(u: ConvexFn, zeta: ZetaSpec) -> float:
    """
    Discrete Monge-Ampere sum of zeta_2(u(x_C)) V_n(C) over the subdivision of dom u*

    Raises:
        NotCoercive: u is not coercive
        Unbounded: u is an indicator
    """
    return float(_monge_ampere_sum(u, lambda value: Fraction(zeta_eval(zeta, value))))


def z2_exact(u: ConvexFn, zeta: ZetaSpec) -> Fraction:
    """Rational Monge-Ampere sum for tent and cutoff weights"""
    return Fraction(_monge_ampere_sum(u, lambda value: zeta_exact(zeta, value)))


def components(u: ConvexFn, spec: ValuationSpec, tol: Optional[float] = None) -> ZComponents:
    """Evaluate the three summands of Z(u); absent weights give 0"""
    first = z0(u, spec.zeta0) if spec.zeta0 else 0.0
    middle = z1(u, spec.zeta1, tol) if spec.zeta1 else QuadResult(0.0, 0.0)
    last = z2(u, spec.zeta2) if spec.zeta2 else 0.0
    return ZComponents(z0=first, z1=middle.value, z2=last, z1_error=middle.error)


def z_total(u: ConvexFn, spec: ValuationSpec, tol: Optional[float] = None) -> float:
    """Z(u) = z0 + z1 + z2"""
    return components(u, spec, tol).total


def _cell_volumes(w: ConvexFn) -> List[Tuple[Piece, Fraction]]:
    pacf = as_pacf(w)
    if not isinstance(pacf, PacfRestricted) or not origin_interior(pacf.domain):
        raise OriginNotInterior("the domain of w must be bounded with the origin in its interior")
    return [(piece, volume(region)) for piece, region in linearity_cells(pacf)]


def hessian_dual(w: ConvexFn, zeta: ZetaSpec) -> float:
    """
    int_{dom w} zeta(grad w(x) . x - w(x)) dx

    On the cell where w(x) = a . x + b the integrand is zeta(-b).

    Raises:
        OriginNotInterior: 0 is not interior to dom w
    """
    return float(sum(Fraction(zeta_eval(zeta, -b)) * region_volume
                     for (_, b), region_volume in _cell_volumes(w)))


def hessian_dual_exact(w: ConvexFn, zeta: ZetaSpec) -> Fraction:
    """Rational hessian_dual for tent and cutoff weights"""
    return sum((zeta_exact(zeta, -b) * region_volume for (_, b), region_volume in _cell_volumes(w)),
               Fraction(0))


def dual_min_val(w: ConvexFn, zeta: ZetaSpec) -> float:
    """
    zeta(-w(0)), i.e. zeta(min w*)

    Raises:
        OriginNotInDomain: w(0) is infinite
    """
    origin = zero(w.n)
    value = evaluate(w, origin)
    if value == INF:
        raise OriginNotInDomain("0 lies outside the domain of w")
    return zeta_eval(zeta, -value)


@dataclass(frozen=True)
class Valuation:
    """Z on the finite class, or its dual Z*(w) = Z(w*) on the restricted class"""
    spec: ValuationSpec
    dual: bool = False

    def components(self, u: ConvexFn, tol: Optional[float] = None) -> ZComponents:
        target = conjugate(u) if self.dual else u
        return components(target, self.spec, tol)

    def __call__(self, u: ConvexFn, tol: Optional[float] = None) -> float:
        return self.components(u, tol).total


def dualize(valuation) -> Valuation:
    """Z* from Z; dualizing twice gives Z back"""
    if isinstance(valuation, ValuationSpec):
        return Valuation(valuation, dual=True)
    return Valuation(valuation.spec, dual=not valuation.dual)


def origin_hull_volume(u: ConvexFn, zeta: ZetaSpec, tol: Optional[float] = None) -> QuadResult:
    """
    int zeta(u_0(x)) dx with u_0 = (u* v 0)*

    SL(n) invariant and a valuation, but not translation invariant.
    """
    return z1(u_zero(u), zeta, tol)
