"""
Exact Polyhedral Backend

Thin adapter over pycddlib in fraction mode. Converts between halfspace
lists (normal . x <= offset) and generator lists (vertices, rays, lines),
removes redundancy, and solves small linear programs exactly.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import cdd

from funcval.utils.rational import Point

Halfspace = Tuple[Point, Fraction]

NUMBER_TYPE = "fraction"


@dataclass
class Generators:
    """Minimal V-representation of a polyhedron"""
    vertices: List[Point] = field(default_factory=list)
    rays: List[Point] = field(default_factory=list)
    lines: List[Point] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines


@dataclass
class LPResult:
    """Outcome of an exact linear program"""
    status: str  # "optimal", "unbounded" or "infeasible"
    value: Optional[Fraction] = None
    point: Optional[Point] = None


def _h_rows(halfspaces: Sequence[Halfspace]) -> List[List[Fraction]]:
    # cdd stores b - A x >= 0
    return [[Fraction(offset)] + [-Fraction(a) for a in normal] for normal, offset in halfspaces]


def _h_matrix(n: int, halfspaces: Sequence[Halfspace],
              equalities: Sequence[Halfspace] = ()) -> "cdd.Matrix":
    rows = _h_rows(halfspaces)
    if not rows:
        # trivial 0 <= 1 keeps the column count when no constraints are given
        rows = [[Fraction(1)] + [Fraction(0)] * n]
    mat = cdd.Matrix(rows, number_type=NUMBER_TYPE)
    if equalities:
        mat.extend(_h_rows(equalities), linear=True)
    mat.rep_type = cdd.RepType.INEQUALITY
    return mat


def generators(n: int, halfspaces: Sequence[Halfspace],
               equalities: Sequence[Halfspace] = ()) -> Generators:
    """
    Enumerate vertices, extreme rays and lines of an H-polyhedron

    Args:
        n: Ambient dimension
        halfspaces: Inequalities normal . x <= offset
        equalities: Equations normal . x = offset

    Returns:
        Generators; empty vertex list means the polyhedron is empty
    """
    poly = cdd.Polyhedron(_h_matrix(n, halfspaces, equalities))
    gen = poly.get_generators()
    result = Generators()
    for i in range(gen.row_size):
        row = [Fraction(x) for x in gen[i]]
        direction = tuple(row[1:])
        if i in gen.lin_set:
            result.lines.append(direction)
        elif row[0] != 0:
            result.vertices.append(tuple(x / row[0] for x in direction))
        else:
            result.rays.append(direction)
    return result


def _v_matrix(points: Sequence[Point]) -> "cdd.Matrix":
    mat = cdd.Matrix([[Fraction(1)] + [Fraction(x) for x in p] for p in points],
                     number_type=NUMBER_TYPE)
    mat.rep_type = cdd.RepType.GENERATOR
    return mat


def inequalities(points: Sequence[Point]) -> Tuple[List[Halfspace], List[Halfspace]]:
    """
    Facet description of the convex hull of a finite point set

    Returns:
        (facet halfspaces, affine-hull equations); equations are empty for
        full-dimensional hulls
    """
    poly = cdd.Polyhedron(_v_matrix(points))
    ineq = poly.get_inequalities()
    facets: List[Halfspace] = []
    equations: List[Halfspace] = []
    for i in range(ineq.row_size):
        row = [Fraction(x) for x in ineq[i]]
        normal = tuple(-x for x in row[1:])
        if not any(normal):
            continue
        if i in ineq.lin_set:
            equations.append((normal, row[0]))
        else:
            facets.append((normal, row[0]))
    return facets, equations


def extreme_points(points: Sequence[Point]) -> List[Point]:
    """Drop every point that lies in the convex hull of the others"""
    unique = sorted(set(points))
    if len(unique) <= 1:
        return unique
    mat = _v_matrix(unique)
    mat.canonicalize()
    kept = []
    for i in range(mat.row_size):
        row = [Fraction(x) for x in mat[i]]
        kept.append(tuple(x / row[0] for x in row[1:]))
    return sorted(kept)


def irredundant(n: int, halfspaces: Sequence[Halfspace]) -> List[int]:
    """
    Indices of the halfspaces that survive redundancy removal

    Exact duplicates keep their first occurrence.
    """
    if not halfspaces:
        return []
    mat = _h_matrix(n, halfspaces)
    _, redundant = mat.canonicalize()
    return [i for i in range(len(halfspaces)) if i not in redundant]


def maximize(n: int, halfspaces: Sequence[Halfspace], objective: Sequence[Fraction],
             constant: Fraction = Fraction(0),
             equalities: Sequence[Halfspace] = ()) -> LPResult:
    """
    Maximize constant + objective . x over an H-polyhedron, exactly

    Returns:
        LPResult with status "optimal", "unbounded" or "infeasible"
    """
    mat = _h_matrix(n, halfspaces, equalities)
    mat.obj_type = cdd.LPObjType.MAX
    mat.obj_func = tuple([Fraction(constant)] + [Fraction(c) for c in objective])
    lp = cdd.LinProg(mat)
    lp.solve()
    if lp.status == cdd.LPStatusType.OPTIMAL:
        return LPResult(
            status="optimal",
            value=Fraction(lp.obj_value),
            point=tuple(Fraction(x) for x in lp.primal_solution),
        )
    if lp.status in (cdd.LPStatusType.DUAL_INCONSISTENT, cdd.LPStatusType.STRUC_DUAL_INCONSISTENT):
        return LPResult(status="unbounded")
    if lp.status in (cdd.LPStatusType.INCONSISTENT, cdd.LPStatusType.STRUC_INCONSISTENT):
        return LPResult(status="infeasible")
    raise RuntimeError(f"cdd LP ended with status {lp.status}")
