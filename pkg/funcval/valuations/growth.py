"""
Growth Function Recovery

Z(l_{lambda K} + t) = psi_0(t) + lambda^n psi_1(t) V_n(K) + lambda^-n psi_2(t) V_n*(K)
for every continuous SL(n) and translation invariant valuation. Evaluating
Z on cone functions for several lambda and solving this system recovers
the growth functions at t.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

import numpy as np

from funcval.core.config import settings
from funcval.core.errors import DimensionMismatch, IllConditioned, ParameterOutOfRange
from funcval.core.logging import get_logger
from funcval.convexfn.functions import cone
from funcval.geomkernel.actions import scale
from funcval.geomkernel.polytope import Polytope, as_vrep, polar_volume, volume
from funcval.utils.rational import Number, to_fraction
from funcval.valuations.functionals import ValuationSpec, z_total
from funcval.zeta.growth import GrowthFns

logger = get_logger(__name__)


@dataclass(frozen=True)
class GrowthSample:
    """Recovered (psi_0, psi_1, psi_2) at t with the quality of the solve"""
    t: Fraction
    psi0: float
    psi1: float
    psi2: float
    residual: float
    condition: float
    lambdas: Tuple[Fraction, ...]


def growth_fns(spec: ValuationSpec) -> GrowthFns:
    """Analytic growth functions of a weight triple"""
    return GrowthFns(n=spec.n, zeta0=spec.zeta0, zeta1=spec.zeta1, zeta2=spec.zeta2)


def growth_extract(spec: ValuationSpec, K: Polytope, t: Number,
                   lambdas: Sequence[Number]) -> GrowthSample:
    """
    Recover psi_0(t), psi_1(t), psi_2(t) from Z on scaled cone functions

    Args:
        spec: Weight triple of Z
        K: Body with the origin in its interior
        t: Shift of the cone functions
        lambdas: At least three distinct positive scale factors

    Returns:
        GrowthSample with the least-squares solution, its residual and the
        condition number of the design matrix

    Raises:
        IllConditioned: Condition number above settings.condition_limit
    """
    body = as_vrep(K)
    if body.n != spec.n:
        raise DimensionMismatch(f"body in R^{body.n} for a valuation on R^{spec.n}")
    scales = tuple(to_fraction(lam) for lam in lambdas)
    if len(set(scales)) < 3 or any(lam <= 0 for lam in scales):
        raise ParameterOutOfRange("growth extraction needs three distinct positive scales")
    shift = to_fraction(t)
    n = spec.n

    design = np.array([[1.0, float(lam) ** n, float(lam) ** -n] for lam in scales])
    condition = float(np.linalg.cond(design))
    if condition > settings.condition_limit:
        raise IllConditioned(f"condition number {condition:.3e} exceeds {settings.condition_limit:.1e}")

    values = np.array([z_total(cone(scale(body, lam), shift), spec) for lam in scales])
    solution, *_ = np.linalg.lstsq(design, values, rcond=None)
    residual = float(np.linalg.norm(design @ solution - values))

    sample = GrowthSample(
        t=shift,
        psi0=float(solution[0]),
        psi1=float(solution[1]) / float(volume(body)),
        psi2=float(solution[2]) / float(polar_volume(body)),
        residual=residual,
        condition=condition,
        lambdas=scales,
    )
    logger.debug(f"Growth sample at t={shift}: psi=({sample.psi0:.10g}, {sample.psi1:.10g}, "
                 f"{sample.psi2:.10g}), residual {residual:.2e}, cond {condition:.2e}")
    return sample


def growth_difference(spec: ValuationSpec, K: Polytope, t: Number, lam: Number) -> Tuple[float, float]:
    """
    Both sides of Z(l_{lambda K} + t) - Z(l_K + t)
    = (lambda^n - 1) psi_1(t) V_n(K) + (lambda^-n - 1) psi_2(t) V_n*(K)

    Returns:
        (measured difference, analytic right-hand side)
    """
    body = as_vrep(K)
    shift, factor = to_fraction(t), to_fraction(lam)
    n = spec.n
    measured = z_total(cone(scale(body, factor), shift), spec) - z_total(cone(body, shift), spec)
    psi = growth_fns(spec)
    expected = ((float(factor) ** n - 1) * psi.psi1(float(shift)) * float(volume(body))
                + (float(factor) ** -n - 1) * psi.psi2(float(shift)) * float(polar_volume(body)))
    return measured, expected
