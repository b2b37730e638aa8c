"""
Box Indicator Identity

z1(reg_delta(I_[0,lambda]^n + t)) = (1/n!) sum_k c_{n,k}(delta) (-lambda)^k psi_1^(k)(t)

with c_{n,k} from the Pascal-type recurrence
c_{i+1,k} = c_{i,k-1} + 2 delta c_{i,k}, seeded so that c_{i,0} = (2 delta)^i.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from funcval.core.config import settings
from funcval.core.errors import ParameterOutOfRange
from funcval.core.logging import get_logger
from funcval.convexfn.functions import indicator
from funcval.convexfn.regularize import reg_delta
from funcval.geomkernel.bodies import box
from funcval.utils.rational import Number, to_fraction
from funcval.valuations.functionals import z1
from funcval.zeta.growth import psi1
from funcval.zeta.presets import ZetaSpec

logger = get_logger(__name__)


def cnk_coefficients(n: int, delta: Number) -> List[Fraction]:
    """
    c_{n,0}(delta), ..., c_{n,n}(delta)

    Equal to binomial(n, k) (2 delta)^(n-k); c_{n,n} = 1.
    """
    d = to_fraction(delta)
    if n < 1:
        raise ParameterOutOfRange("n must be at least 1")
    if d <= 0:
        raise ParameterOutOfRange(f"delta={d} must be positive")
    row = [Fraction(1)]
    for _ in range(n):
        row = [(row[k - 1] if k > 0 else 0) + (2 * d * row[k] if k < len(row) else 0)
               for k in range(len(row) + 1)]
    return row


@dataclass
class BoxReport:
    """Both sides of the box identity and their relative gap"""
    n: int
    lam: Fraction
    delta: Fraction
    t: Fraction
    lhs: float
    rhs: float
    gap: float
    passed: bool
    coefficients: List[Fraction] = field(default_factory=list)


def box_rhs(n: int, lam: Fraction, delta: Fraction, t: Fraction, zeta: ZetaSpec) -> float:
    coefficients = cnk_coefficients(n, delta)
    total = sum(float(c) * (-float(lam)) ** k * psi1(zeta, n, float(t), k)
                for k, c in enumerate(coefficients))
    return total / math.factorial(n)


def box_identity_check(n: int, lam: Number, delta: Number, t: Number, zeta: ZetaSpec,
                       tol: Optional[float] = None) -> BoxReport:
    """
    Compare the layer-cake value of the regularized box indicator with the c_{n,k} form

    Args:
        n: Dimension, 1 or 2
        lam: Side length of the box [0, lam]^n
        delta: Regularization parameter
        t: Shift of the indicator
        zeta: Weight in the zeta1 role
        tol: Relative tolerance (settings.box_tol)

    Raises:
        ParameterOutOfRange: n outside {1, 2} or non-positive lam, delta
        QuadratureNotConverged: The layer-cake integral did not settle
    """
    tol = settings.box_tol if tol is None else tol
    if n not in (1, 2):
        raise ParameterOutOfRange(f"the box identity check runs for n in {{1, 2}}, got {n}")
    lam_, delta_, t_ = to_fraction(lam), to_fraction(delta), to_fraction(t)
    if lam_ <= 0:
        raise ParameterOutOfRange(f"lambda={lam_} must be positive")

    regularized = reg_delta(indicator(box(n, lam_), t_), delta_)
    lhs = z1(regularized, zeta).value
    rhs = box_rhs(n, lam_, delta_, t_, zeta)
    gap = abs(lhs - rhs) / abs(rhs) if rhs else abs(lhs - rhs)
    report = BoxReport(
        n=n, lam=lam_, delta=delta_, t=t_, lhs=lhs, rhs=rhs, gap=gap,
        passed=gap <= tol, coefficients=cnk_coefficients(n, delta_),
    )
    logger.debug(f"Box identity n={n} lambda={lam_} delta={delta_} t={t_}: {lhs:.10g} vs {rhs:.10g}")
    return report
