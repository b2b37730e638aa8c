"""
Weight Presets

Closed families for the weights zeta_0, zeta_1, zeta_2: exponential decay,
piecewise-linear tents and polynomial cutoffs, with analytic derivatives,
exact rational evaluation where the data allow it, and support bounds.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

from funcval.core.errors import DerivativeUnavailable, ParameterOutOfRange, UnsupportedInput
from funcval.utils.rational import Number, to_fraction


class ZetaKind(str, Enum):
    """Preset families"""
    EXP = "exp"  # e^(-alpha t)
    BUMP = "bump"  # tent on [c - w, c + w] with peak h
    POLY = "poly"  # max(0, T - t)^p


class ZetaRole(str, Enum):
    """Slot of a weight in the valuation"""
    ZETA0 = "zeta0"
    ZETA1 = "zeta1"
    ZETA2 = "zeta2"


@dataclass(frozen=True)
class ZetaSpec:
    """A preset weight with its parameters"""
    kind: ZetaKind
    role: ZetaRole = ZetaRole.ZETA1
    alpha: Fraction = Fraction(1)
    center: Fraction = Fraction(0)
    width: Fraction = Fraction(1)
    height: Fraction = Fraction(1)
    cutoff: Fraction = Fraction(1)
    power: int = 3

    def __post_init__(self):
        if self.kind == ZetaKind.EXP and self.alpha <= 0:
            raise ParameterOutOfRange(f"alpha={self.alpha} must be positive")
        if self.kind == ZetaKind.BUMP and (self.width <= 0 or self.height < 0):
            raise ParameterOutOfRange("bump needs width > 0 and height >= 0")
        if self.kind == ZetaKind.POLY and self.power < 1:
            raise ParameterOutOfRange(f"power={self.power} must be at least 1")
        if self.role == ZetaRole.ZETA2 and self.kind == ZetaKind.EXP:
            raise ParameterOutOfRange("zeta2 must vanish above some T; use bump or poly")

    @property
    def compact(self) -> bool:
        """zeta vanishes on [T, inf) for some T"""
        return self.kind != ZetaKind.EXP


def exp_decay(alpha: Number = 1, role: ZetaRole = ZetaRole.ZETA1) -> ZetaSpec:
    return ZetaSpec(ZetaKind.EXP, role, alpha=to_fraction(alpha))


def bump(center: Number = 0, width: Number = 1, height: Number = 1,
         role: ZetaRole = ZetaRole.ZETA2) -> ZetaSpec:
    return ZetaSpec(ZetaKind.BUMP, role, center=to_fraction(center),
                    width=to_fraction(width), height=to_fraction(height))


def poly_cutoff(cutoff: Number = 1, power: int = 3, role: ZetaRole = ZetaRole.ZETA1) -> ZetaSpec:
    return ZetaSpec(ZetaKind.POLY, role, cutoff=to_fraction(cutoff), power=int(power))


def with_role(spec: ZetaSpec, role: ZetaRole) -> ZetaSpec:
    return ZetaSpec(spec.kind, role, spec.alpha, spec.center, spec.width,
                    spec.height, spec.cutoff, spec.power)


def _check_order(spec: ZetaSpec, k: int) -> None:
    if k < 0:
        raise DerivativeUnavailable("derivative order must be non-negative")
    if spec.kind == ZetaKind.BUMP and k > 0:
        raise DerivativeUnavailable("the tent has no classical derivative")
    if spec.kind == ZetaKind.POLY and k > spec.power:
        raise DerivativeUnavailable(f"order {k} exceeds power {spec.power}")


def zeta_eval(spec: ZetaSpec, t: float, k: int = 0) -> float:
    """
    k-th derivative of the weight at t

    Raises:
        DerivativeUnavailable: k > 0 for a tent, k > p for a cutoff
    """
    _check_order(spec, k)
    t = float(t)
    if spec.kind == ZetaKind.EXP:
        alpha = float(spec.alpha)
        return (-alpha) ** k * math.exp(-alpha * t)
    if spec.kind == ZetaKind.BUMP:
        c, w, h = float(spec.center), float(spec.width), float(spec.height)
        return h * max(0.0, 1.0 - abs(t - c) / w)
    T, p = float(spec.cutoff), spec.power
    if t >= T:
        return 0.0
    return (-1) ** k * math.perm(p, k) * (T - t) ** (p - k)


def zeta_exact(spec: ZetaSpec, t: Number) -> Fraction:
    """
    Exact rational value of a tent or cutoff at a rational point

    Raises:
        UnsupportedInput: Exponential weights are not rational
    """
    x = to_fraction(t)
    if spec.kind == ZetaKind.BUMP:
        return spec.height * max(Fraction(0), 1 - abs(x - spec.center) / spec.width)
    if spec.kind == ZetaKind.POLY:
        return max(Fraction(0), spec.cutoff - x) ** spec.power
    raise UnsupportedInput("exponential weights have no exact rational values")


def kinks(spec: ZetaSpec) -> Tuple[Fraction, ...]:
    """Points where the weight is not smooth"""
    if spec.kind == ZetaKind.BUMP:
        c, w = spec.center, spec.width
        return (c - w, c, c + w)
    if spec.kind == ZetaKind.POLY:
        return (spec.cutoff,)
    return ()


def support_end(spec: ZetaSpec) -> float:
    """Sup of the support, inf for exponential decay"""
    if spec.kind == ZetaKind.BUMP:
        return float(spec.center + spec.width)
    if spec.kind == ZetaKind.POLY:
        return float(spec.cutoff)
    return math.inf


def support_bound(spec: ZetaSpec) -> Optional[Fraction]:
    """Exact sup of the support, None for exponential decay"""
    if spec.kind == ZetaKind.BUMP:
        return spec.center + spec.width
    if spec.kind == ZetaKind.POLY:
        return spec.cutoff
    return None
