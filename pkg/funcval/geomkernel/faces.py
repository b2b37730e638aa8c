"""
Face Lattice Utilities

Combinatorics on a polytope given by its vertex list and its halfspaces:
face enumeration, pulling triangulation and exact nearest-point distances.
Faces are represented as frozensets of vertex indices.
"""

from fractions import Fraction
from math import factorial
from typing import FrozenSet, List, Optional, Sequence, Set, Tuple

from funcval.utils.cddlib import Halfspace
from funcval.utils.rational import (
    Point,
    add,
    affine_rank,
    det,
    dot,
    norm_sq,
    rank,
    scale,
    solve,
    sub,
)

Face = FrozenSet[int]


def tight_sets(vertices: Sequence[Point], halfspaces: Sequence[Halfspace]) -> List[Face]:
    """Vertex indices attaining equality in each halfspace"""
    return [
        frozenset(i for i, v in enumerate(vertices) if dot(normal, v) == offset)
        for normal, offset in halfspaces
    ]


def enumerate_faces(vertices: Sequence[Point], halfspaces: Sequence[Halfspace]) -> List[Face]:
    """
    All nonempty faces, the polytope itself included

    Every face is an intersection of facets, so closing the full vertex set
    under intersection with the tight sets reaches all of them.
    """
    tight = tight_sets(vertices, halfspaces)
    full: Face = frozenset(range(len(vertices)))
    seen: Set[Face] = {full}
    queue = [full]
    while queue:
        face = queue.pop()
        for t in tight:
            smaller = face & t
            if smaller and smaller != face and smaller not in seen:
                seen.add(smaller)
                queue.append(smaller)
    return sorted(seen, key=lambda f: (len(f), sorted(f)))


def _triangulate_face(face: Face, dim: int, vertices: Sequence[Point],
                      tight: Sequence[Face]) -> List[Tuple[int, ...]]:
    if dim == 0:
        return [tuple(face)]
    apex = min(face, key=lambda i: vertices[i])
    boundary: Set[Face] = set()
    for t in tight:
        smaller = face & t
        if apex in smaller or smaller == face or not smaller:
            continue
        if affine_rank([vertices[i] for i in smaller]) == dim - 1:
            boundary.add(smaller)
    simplices = []
    for facet in sorted(boundary, key=sorted):
        for simplex in _triangulate_face(facet, dim - 1, vertices, tight):
            simplices.append((apex,) + simplex)
    return simplices


def triangulate(vertices: Sequence[Point], halfspaces: Sequence[Halfspace]) -> List[Tuple[Point, ...]]:
    """
    Pulling triangulation of a polytope from its lexicographically first vertex

    Args:
        vertices: Extreme points
        halfspaces: Facet inequalities (equalities given as opposite pairs)

    Returns:
        Simplices as vertex tuples, each of size dim + 1
    """
    if not vertices:
        return []
    dim = affine_rank(vertices)
    tight = tight_sets(vertices, halfspaces)
    full: Face = frozenset(range(len(vertices)))
    return [
        tuple(vertices[i] for i in simplex)
        for simplex in _triangulate_face(full, dim, vertices, tight)
    ]


def simplex_volume(simplex: Sequence[Point]) -> Fraction:
    """Unsigned volume of a full-dimensional simplex"""
    base = simplex[0]
    n = len(base)
    edges = [sub(v, base) for v in simplex[1:]]
    return abs(det(edges)) / factorial(n)


def _independent(directions: Sequence[Point]) -> List[Point]:
    basis: List[Point] = []
    for d in directions:
        if rank(basis + [d]) > len(basis):
            basis.append(d)
    return basis


def project_affine(points: Sequence[Point], x: Point) -> Point:
    """Orthogonal projection of x onto the affine hull of points, exactly"""
    base = points[0]
    basis = _independent([sub(p, base) for p in points[1:]])
    if not basis:
        return base
    gram = [[dot(d, e) for e in basis] for d in basis]
    rhs = [dot(d, sub(x, base)) for d in basis]
    coefficients = solve(gram, rhs)
    projection = base
    for c, d in zip(coefficients, basis):
        projection = add(projection, scale(d, c))
    return projection


def _inside(halfspaces: Sequence[Halfspace], x: Point) -> bool:
    return all(dot(normal, x) <= offset for normal, offset in halfspaces)


def distance_sq(vertices: Sequence[Point], halfspaces: Sequence[Halfspace], x: Point,
                faces: Optional[Sequence[Face]] = None) -> Fraction:
    """
    Exact squared Euclidean distance from x to a polytope

    The nearest point lies in the relative interior of some face, where it
    is the projection onto that face's affine hull.
    """
    if _inside(halfspaces, x):
        return Fraction(0)
    if faces is None:
        faces = enumerate_faces(vertices, halfspaces)
    best: Optional[Fraction] = None
    for face in faces:
        projection = project_affine([vertices[i] for i in sorted(face)], x)
        if not _inside(halfspaces, projection):
            continue
        d = norm_sq(sub(x, projection))
        if best is None or d < best:
            best = d
    return best
