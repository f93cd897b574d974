"""Small exact linear algebra: fraction-free determinants and character-
istic polynomials of rational matrices.

Determinants use the Bareiss algorithm (integer-preserving Gaussian
elimination), so no rational arithmetic appears until the final scaling.
Characteristic polynomials are recovered by evaluating det(k*I - M) at
k = 0..d and interpolating the unique monic degree-d polynomial through
those values.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

__all__ = ["det_int", "charpoly_fractions"]


def det_int(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix (Bareiss, exact)."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    m = [r[:] for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def charpoly_fractions(matrix: list[list[Fraction]]) -> list[Fraction]:
    """Coefficients (ascending, monic) of det(x*I - M) for a square matrix
    of Fractions."""
    d = len(matrix)
    if d == 0:
        return [Fraction(1)]
    scale = lcm(*(c.denominator for row in matrix for c in row)) if d else 1
    mi = [[int(c * scale) for c in row] for row in matrix]
    # det(k*I - M) = det(k*scale*I - Mi) / scale^d
    values = []
    for k in range(d + 1):
        rows = [
            [(k * scale if i == j else 0) - mi[i][j] for j in range(d)]
            for i in range(d)
        ]
        values.append(Fraction(det_int(rows), scale**d))
    return _interpolate_monic(values)


def _interpolate_monic(values: list[Fraction]) -> list[Fraction]:
    """Monic polynomial of degree d through the points (k, values[k]),
    k = 0..d, via Newton divided differences."""
    d = len(values) - 1
    diffs = list(values)
    # diffs[j] becomes the divided difference f[0..j]; with nodes 0..d the
    # denominator x_j - x_{j-level} is just `level`
    for level in range(1, d + 1):
        for j in range(d, level - 1, -1):
            diffs[j] = (diffs[j] - diffs[j - 1]) / level
    # unwind the Newton form: p = f[0..d] * (x - x_0)...(x - x_{d-1}) + ...
    acc = [diffs[d]]
    for j in range(d - 1, -1, -1):
        # acc <- acc * (x - j) + diffs[j]
        nxt = [Fraction(0)] * (len(acc) + 1)
        for i, c in enumerate(acc):
            nxt[i + 1] += c
            nxt[i] -= c * j
        nxt[0] += diffs[j]
        acc = nxt
    return acc
