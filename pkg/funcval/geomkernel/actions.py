"""
Group Actions

Unimodular maps, translations and dilations acting exactly on polytopes.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from funcval.core.errors import DimensionMismatch, ParameterOutOfRange
from funcval.geomkernel.polytope import Polytope, PolytopeV, as_vrep
from funcval.utils.rational import (
    Matrix,
    Number,
    Point,
    det,
    identity,
    inverse,
    matmul,
    matvec,
    to_fraction,
    to_point,
    transpose,
)

SHEAR_RANGE = (-2, 2)


@dataclass(frozen=True)
class UnimodularMap:
    """Linear map of determinant exactly 1"""
    matrix: Matrix

    def __post_init__(self):
        if det(self.matrix) != 1:
            raise ParameterOutOfRange("unimodular map must have determinant 1")

    @property
    def n(self) -> int:
        return len(self.matrix)

    def apply(self, x: Sequence[Fraction]) -> Point:
        return matvec(self.matrix, x)

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(inverse(self.matrix))

    def transpose(self) -> "UnimodularMap":
        return UnimodularMap(transpose(self.matrix))

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """self after other"""
        return UnimodularMap(matmul(self.matrix, other.matrix))


def unimodular(rows: Sequence[Sequence[Number]]) -> UnimodularMap:
    return UnimodularMap(tuple(to_point(row) for row in rows))


def random_unimodular(n: int, seed: int, shear_count: int = 4) -> UnimodularMap:
    """
    Random product of elementary shears I + s E_ij

    Args:
        n: Dimension
        seed: Seed for the numpy generator
        shear_count: Number of shears; 0 gives the identity

    Returns:
        UnimodularMap with integer entries
    """
    if shear_count < 0:
        raise ParameterOutOfRange("shear_count must be non-negative")
    rng = np.random.default_rng(seed)
    matrix = identity(n)
    if n < 2:
        return UnimodularMap(matrix)
    low, high = SHEAR_RANGE
    for _ in range(shear_count):
        i, j = rng.choice(n, size=2, replace=False)
        s = int(rng.integers(low, high + 1))
        shear = [list(row) for row in identity(n)]
        shear[int(i)][int(j)] = Fraction(s)
        matrix = matmul(tuple(tuple(row) for row in shear), matrix)
    return UnimodularMap(matrix)


def apply_map(phi: UnimodularMap, P: Polytope) -> PolytopeV:
    """Image phi(P), computed vertex-wise"""
    V = as_vrep(P)
    if phi.n != V.n:
        raise DimensionMismatch(f"map of size {phi.n} on dimension {V.n}")
    return PolytopeV(n=V.n, vertices=tuple(sorted(phi.apply(v) for v in V.vertices)))


def translate(P: Polytope, x: Sequence[Number]) -> PolytopeV:
    """P + x"""
    V = as_vrep(P)
    shift = to_point(x)
    if len(shift) != V.n:
        raise DimensionMismatch(f"translation of length {len(shift)} on dimension {V.n}")
    moved = (tuple(a + b for a, b in zip(v, shift)) for v in V.vertices)
    return PolytopeV(n=V.n, vertices=tuple(sorted(moved)))


def scale(P: Polytope, factor: Number) -> PolytopeV:
    """factor * P for a nonzero factor"""
    lam = to_fraction(factor)
    if lam == 0:
        raise ParameterOutOfRange("scale factor must be nonzero")
    V = as_vrep(P)
    return PolytopeV(n=V.n, vertices=tuple(sorted(tuple(lam * a for a in v) for v in V.vertices)))
