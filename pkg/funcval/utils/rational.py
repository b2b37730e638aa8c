"""
Exact Rational Helpers

Parsing, formatting and small dense linear algebra over fractions.Fraction.
Everything here is exact; floats only enter through explicit conversion.
"""

import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

Number = Union[int, float, str, Fraction]
Point = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


def to_fraction(value: Number) -> Fraction:
    """
    Convert a JSON-ish number into an exact rational

    Floats go through their shortest decimal repr, so 0.1 becomes 1/10.
    Strings accept "p/q", integers and decimals.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def to_point(values: Sequence[Number]) -> Point:
    """Convert a coordinate sequence into an exact point"""
    return tuple(to_fraction(v) for v in values)


def format_fraction(value: Fraction) -> str:
    """Serialize a rational as a "p/q" string"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Sequence[Fraction], factor: Fraction) -> Point:
    return tuple(factor * x for x in a)


def zero(n: int) -> Point:
    return tuple(Fraction(0) for _ in range(n))


def unit(n: int, i: int) -> Point:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def norm_sq(a: Sequence[Fraction]) -> Fraction:
    return dot(a, a)


def matvec(matrix: Sequence[Sequence[Fraction]], vector: Sequence[Fraction]) -> Point:
    return tuple(dot(row, vector) for row in matrix)


def transpose(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    return tuple(tuple(col) for col in zip(*matrix))


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def _row_echelon(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int], int]:
    """
    Gaussian elimination in place

    Returns:
        (reduced rows, pivot columns, number of row swaps)
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    pivots: List[int] = []
    swaps = 0
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            swaps += 1
        lead = rows[r][c]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / lead
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots, swaps


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Exact rank of a list of vectors"""
    if not vectors:
        return 0
    _, pivots, _ = _row_echelon([list(map(Fraction, v)) for v in vectors])
    return len(pivots)


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull of a point set (-1 for no points)"""
    if not points:
        return -1
    base = points[0]
    return rank([sub(p, base) for p in points[1:]])


def det(matrix: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant"""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    rows = [list(map(Fraction, row)) for row in matrix]
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            result = -result
        lead = rows[c][c]
        result *= lead
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / lead
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Point]:
    """
    Solve A x = b exactly

    Returns:
        The unique solution, or None when the system is inconsistent or
        underdetermined.
    """
    if not matrix:
        return None
    n = len(matrix[0])
    augmented = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    rows, pivots, _ = _row_echelon(augmented)
    if n in pivots:
        return None
    if len(pivots) < n:
        return None
    solution = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        solution[c] = rows[r][n] / rows[r][c]
    return tuple(solution)


def inverse(matrix: Sequence[Sequence[Fraction]]) -> Matrix:
    """Exact inverse of a square matrix; raises ZeroDivisionError if singular"""
    n = len(matrix)
    augmented = [list(map(Fraction, row)) + list(unit(n, i)) for i, row in enumerate(matrix)]
    rows, pivots, _ = _row_echelon(augmented)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(x / rows[i][i] for x in rows[i][n:]) for i in range(n))


def nullspace(vectors: Sequence[Sequence[Fraction]], n: int) -> List[Point]:
    """Basis of {x : v.x = 0 for all v} in dimension n"""
    if not vectors:
        return [unit(n, i) for i in range(n)]
    rows, pivots, _ = _row_echelon([list(map(Fraction, v)) for v in vectors])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -rows[r][f] / rows[r][c]
        basis.append(tuple(x))
    return basis


def primitive(normal: Sequence[Fraction], offset: Fraction) -> Tuple[Tuple[int, ...], Fraction]:
    """
    Rescale a halfspace normal.x <= offset to a primitive integer normal

    The scale factor is positive, so the inequality direction is kept.
    """
    denominators = [Fraction(a).denominator for a in normal]
    common = math.lcm(*denominators) if denominators else 1
    ints = [int(Fraction(a) * common) for a in normal]
    g = math.gcd(*ints) if any(ints) else 1
    factor = Fraction(common, g)
    return tuple(a // g for a in ints), Fraction(offset) * factor


def interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """
    Exact polynomial through the points (xs[i], ys[i])

    Returns:
        Coefficients c_0..c_d of sum c_k x^k, d = len(xs) - 1
    """
    d = len(xs)
    vandermonde = [[Fraction(x) ** k for k in range(d)] for x in xs]
    coefficients = solve(vandermonde, ys)
    if coefficients is None:
        raise ValueError("interpolation nodes must be distinct")
    return coefficients


def poly_eval(coefficients: Sequence[Fraction], x: Fraction) -> Fraction:
    """Horner evaluation of sum c_k x^k"""
    result = Fraction(0)
    for c in reversed(coefficients):
        result = result * x + c
    return result


def poly_derivative(coefficients: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(k * c for k, c in enumerate(coefficients))[1:] or (Fraction(0),)
