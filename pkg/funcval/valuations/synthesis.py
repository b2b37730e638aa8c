"""
Theorem Synthesis Chain

For u = l_{lambda P} + t with P a rational polygon inscribed in the unit
circle, the chain

    Z(u)
    = psi_0(t) + psi_1(t) V(lambda P) + psi_2(t) V*(lambda P)
    = psi_0(t) + lambda^n V(P) psi_1(t) + psi_2(t) V(lambda^-1 P*)
    = psi_0(t) + lambda^n n V(P) int r^(n-1) zeta_1(r + t) dr + ...
    = psi_0(t) + lambda^n int zeta_1(l_P(x) + t) dx + ...
    = psi_0(t) + int zeta_1(l_P(x) / lambda + t) dx + int_{lambda^-1 P*} psi_2(t) dx
    = psi_0(min u) + int zeta_1(u(x)) dx + int_{dom u*} psi_2(grad u* . x - u*) dx

is evaluated line by line; the first and last lines are computed by the
library functionals, the middle lines from the growth functions and a
polar quadrature of the gauge.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from funcval.core.config import settings
from funcval.core.errors import ParameterOutOfRange
from funcval.core.logging import get_logger
from funcval.convexfn.conjugation import conjugate
from funcval.convexfn.functions import cone
from funcval.geomkernel.actions import scale
from funcval.geomkernel.bodies import ball
from funcval.geomkernel.polytope import PolytopeV, polar, polar_volume, volume
from funcval.utils.quadrature import adaptive_quad
from funcval.utils.rational import Number, to_fraction
from funcval.valuations.functionals import ValuationSpec, hessian_dual, z0, z1, z_total
from funcval.valuations.growth import growth_fns
from funcval.zeta.growth import psi1_by_quadrature
from funcval.zeta.presets import ZetaSpec, kinks, support_end, zeta_eval

logger = get_logger(__name__)

STEP_NAMES = (
    "valuation",
    "growth_functions",
    "homogeneity",
    "moment_integral",
    "gauge_integral",
    "substitution",
    "theorem_formula",
)


@dataclass
class SynthesisReport:
    """Values of the seven chain lines for one (lambda, t)"""
    lam: float
    t: float
    steps: List[float]
    volume_gap: float
    polar_volume_gap: float
    ball_value: float
    tol: float
    step_names: List[str] = field(default_factory=lambda: list(STEP_NAMES))

    @property
    def chain_gaps(self) -> List[float]:
        return [abs(b - a) for a, b in zip(self.steps, self.steps[1:])]

    @property
    def relative_gap(self) -> float:
        """Largest gap between consecutive lines, relative to the valuation"""
        return max(self.chain_gaps) / max(1.0, abs(self.steps[0]))

    @property
    def passed(self) -> bool:
        return self.relative_gap <= self.tol


def _radial_moment(zeta: ZetaSpec, t: float) -> float:
    """int_0^inf zeta(s + t) s ds"""
    end = support_end(zeta) - t
    if end <= 0:
        return 0.0
    points = [float(k) - t for k in kinks(zeta)] if math.isfinite(end) else None
    return adaptive_quad(lambda s: s * zeta_eval(zeta, s + t), 0.0, end, points=points).value


def gauge_integral(body: PolytopeV, zeta: ZetaSpec, t: float, lam: float = 1.0) -> float:
    """
    int_{R^2} zeta(l_P(x) / lam + t) dx in polar coordinates, summed per sector

    On the sector spanned by consecutive vertices v, w the gauge is
    a . x with a . v = a . w = 1, so the integral factors into the angular
    integral of (lam / a . e(theta))^2 and the radial moment of zeta.
    """
    if body.n != 2:
        raise ParameterOutOfRange("the polar gauge quadrature is planar")
    points = np.array([[float(c) for c in v] for v in body.vertices])
    angles = np.arctan2(points[:, 1], points[:, 0])
    order = np.argsort(angles)
    points, angles = points[order], angles[order]

    angular = 0.0
    for i in range(len(points)):
        j = (i + 1) % len(points)
        start, stop = angles[i], angles[j] + (2 * np.pi if j == 0 else 0.0)
        normal = np.linalg.solve(np.array([points[i], points[j]]), np.ones(2))
        angular += adaptive_quad(
            lambda theta: lam ** 2 / (normal[0] * math.cos(theta) + normal[1] * math.sin(theta)) ** 2,
            float(start), float(stop),
        ).value
    return angular * _radial_moment(zeta, t)


def synthesis_chain(spec: ValuationSpec, lam: Number, t: Number,
                    body: Optional[PolytopeV] = None, tol: Optional[float] = None) -> SynthesisReport:
    """
    Evaluate the synthesis chain on a polygon standing in for B^2

    Args:
        spec: Weight triple on R^2
        lam: Dilation of the polygon
        t: Shift of the cone function
        body: Inscribed polygon (bodies.ball(2) by default)
        tol: Agreement required between consecutive lines
    """
    if spec.n != 2:
        raise ParameterOutOfRange("the synthesis chain runs in the plane")
    tol = settings.synthesis_tol if tol is None else tol
    P = body if body is not None else ball(2)
    factor, shift = to_fraction(lam), to_fraction(t)
    lam_f, t_f = float(factor), float(shift)
    n = spec.n

    psi = growth_fns(spec)
    psi0, psi1, psi2 = psi.psi0(t_f), psi.psi1(t_f), psi.psi2(t_f)
    v_body = float(volume(P))
    v_polar_scaled = float(volume(scale(polar(P), 1 / factor)))
    u = cone(scale(P, factor), shift)

    steps = [z_total(u, spec)]
    steps.append(psi0 + psi1 * float(volume(scale(P, factor))) + psi2 * float(polar_volume(scale(P, factor))))
    steps.append(psi0 + lam_f ** n * v_body * psi1 + psi2 * v_polar_scaled)
    moment = psi1_by_quadrature(spec.zeta1, n, t_f) if spec.zeta1 else 0.0
    steps.append(psi0 + lam_f ** n * v_body * moment + psi2 * v_polar_scaled)
    gauge = gauge_integral(P, spec.zeta1, t_f) if spec.zeta1 else 0.0
    steps.append(psi0 + lam_f ** n * gauge + psi2 * v_polar_scaled)
    scaled_gauge = gauge_integral(P, spec.zeta1, t_f, lam_f) if spec.zeta1 else 0.0
    steps.append(psi0 + scaled_gauge + psi2 * v_polar_scaled)
    steps.append(
        (z0(u, spec.zeta0) if spec.zeta0 else 0.0)
        + (z1(u, spec.zeta1).value if spec.zeta1 else 0.0)
        + (hessian_dual(conjugate(u), spec.zeta2) if spec.zeta2 else 0.0)
    )

    report = SynthesisReport(
        lam=lam_f,
        t=t_f,
        steps=steps,
        volume_gap=abs(v_body - math.pi),
        polar_volume_gap=abs(float(polar_volume(P)) - math.pi),
        ball_value=psi0 + lam_f ** n * math.pi * psi1 + psi2 * math.pi / lam_f ** n,
        tol=tol,
    )
    logger.info(f"Synthesis chain lambda={factor} t={shift}: ends {steps[0]:.10g} / {steps[-1]:.10g}")
    return report
