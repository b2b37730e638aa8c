"""
Growth Functions

psi_1(t) = n int_0^inf r^(n-1) zeta_1(r + t) dr and its derivatives, the
growth triple (psi_0, psi_1, psi_2) of a weight triple, and the truncated
moment integral that reconstructs zeta from its n-th derivative.
"""

import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import gammaincc

from funcval.core.config import settings
from funcval.core.errors import DerivativeUnavailable, ParameterOutOfRange
from funcval.utils.quadrature import adaptive_quad
from funcval.zeta.presets import ZetaKind, ZetaSpec, kinks, support_end, zeta_eval


def _exp_tail_length(alpha: float, n: int, t: float) -> float:
    """R with int_R^inf r^(n-1) e^(-alpha (r + t)) dr below settings.tail_tol"""
    R = max(1.0, (n - 1) / alpha)
    while True:
        # regularized upper incomplete gamma gives the exact tail
        tail = math.gamma(n) * gammaincc(n, alpha * R) * alpha ** (-n) * math.exp(-alpha * t)
        if tail < settings.tail_tol:
            return R
        R *= 2


def psi1(spec: ZetaSpec, n: int, t: float, k: int = 0) -> float:
    """
    k-th derivative of psi_1 at t, for 0 <= k <= n

    Exponential weights use the closed form n! alpha^-n e^(-alpha t).
    Other presets are integrated adaptively in the reduced-moment form
    n (-1)^k (n-1)!/(n-1-k)! int_0^inf r^(n-1-k) zeta(r + t) dr, which needs
    no derivative of zeta; k = n gives (-1)^n n! zeta(t).

    Raises:
        QuadratureNotConverged: Adaptive quadrature missed the tolerance
    """
    if n < 1:
        raise ParameterOutOfRange("dimension must be at least 1")
    if not 0 <= k <= n:
        raise DerivativeUnavailable(f"psi_1 derivatives are available up to order n={n}")
    t = float(t)
    if spec.kind == ZetaKind.EXP:
        alpha = float(spec.alpha)
        return math.factorial(n) * alpha ** (-n) * (-alpha) ** k * math.exp(-alpha * t)
    if k == n:
        return (-1) ** n * math.factorial(n) * zeta_eval(spec, t)

    end = support_end(spec) - t
    if end <= 0:
        return 0.0
    power = n - 1 - k
    points = [p - t for p in kinks(spec)]
    result = adaptive_quad(lambda r: r ** power * zeta_eval(spec, r + t), 0.0, end, points=points)
    return n * (-1) ** k * math.perm(n - 1, k) * result.value


def moment_reconstruction(spec: ZetaSpec, n: int, t: float, R: float) -> float:
    """
    int_0^R r^(n-1) ((-1)^n/(n-1)!) zeta^(n)(r + t) dr

    Converges to zeta(t) as R grows.

    Raises:
        DerivativeUnavailable: zeta has no n-th derivative
    """
    zeta_eval(spec, t, n)
    scale = (-1) ** n / math.factorial(n - 1)
    end = min(R, support_end(spec) - t)
    if end <= 0:
        return 0.0
    points = [p - t for p in kinks(spec)]
    result = adaptive_quad(lambda r: r ** (n - 1) * zeta_eval(spec, r + t, n), 0.0, end, points=points)
    return scale * result.value


def psi1_by_quadrature(spec: ZetaSpec, n: int, t: float) -> float:
    """psi_1(t) by direct quadrature of n r^(n-1) zeta(r + t), for any preset"""
    t = float(t)
    if spec.kind == ZetaKind.EXP:
        end = _exp_tail_length(float(spec.alpha), n, t)
    else:
        end = support_end(spec) - t
    if end <= 0:
        return 0.0
    points = [p - t for p in kinks(spec)]
    result = adaptive_quad(lambda r: n * r ** (n - 1) * zeta_eval(spec, r + t), 0.0, end, points=points)
    return result.value


@dataclass(frozen=True)
class GrowthFns:
    """psi_0 = zeta_0, psi_1 from zeta_1, psi_2 = zeta_2; absent weights are zero"""
    n: int
    zeta0: Optional[ZetaSpec] = None
    zeta1: Optional[ZetaSpec] = None
    zeta2: Optional[ZetaSpec] = None

    def psi0(self, t: float) -> float:
        return zeta_eval(self.zeta0, t) if self.zeta0 else 0.0

    def psi1(self, t: float, k: int = 0) -> float:
        return psi1(self.zeta1, self.n, t, k) if self.zeta1 else 0.0

    def psi2(self, t: float) -> float:
        return zeta_eval(self.zeta2, t) if self.zeta2 else 0.0
