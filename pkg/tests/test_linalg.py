"""Exact integer determinants and Fraction characteristic polynomials."""

from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qfermat.linalg import charpoly_fractions, det_int

small_int = st.integers(min_value=-9, max_value=9)


def square(n, elems=small_int):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


def test_det_pinned():
    assert det_int([[5]]) == 5
    assert det_int([[1, 2], [3, 4]]) == -2
    assert det_int([[2, 0, 0], [0, 3, 0], [0, 0, 7]]) == 42
    assert det_int([[1, 2], [2, 4]]) == 0


@given(st.integers(min_value=1, max_value=5).flatmap(square))
@settings(max_examples=120, deadline=None)
def test_det_matches_sympy(rows):
    assert det_int(rows) == int(sympy.Matrix(rows).det())


@given(square(4), square(4))
@settings(max_examples=60, deadline=None)
def test_det_multiplicative(a, b):
    prod = [
        [sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)]
        for i in range(4)
    ]
    assert det_int(prod) == det_int(a) * det_int(b)


def _frac_matrix(rows):
    return [[Fraction(n, d) for n, d in row] for row in rows]


frac_entry = st.tuples(small_int, st.integers(min_value=1, max_value=6))


@given(st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(st.lists(frac_entry, min_size=n, max_size=n), min_size=n, max_size=n)
))
@settings(max_examples=80, deadline=None)
def test_charpoly_matches_sympy(rows):
    m = _frac_matrix(rows)
    got = charpoly_fractions(m)
    n = len(m)
    x = sympy.Symbol("x")
    want = sympy.Poly(
        sympy.Matrix([[sympy.Rational(c) for c in row] for row in m]).charpoly(x), x
    ).all_coeffs()[::-1]
    assert len(got) == n + 1
    assert got[n] == 1  # monic
    assert got == [Fraction(int(c.p), int(c.q)) for c in want]


@given(st.integers(min_value=1, max_value=5).flatmap(square))
@settings(max_examples=80, deadline=None)
def test_charpoly_constant_term_is_det(rows):
    n = len(rows)
    coeffs = charpoly_fractions([[Fraction(v) for v in row] for row in rows])
    # char poly det(xI - A): constant term = (-1)^n det A, x^(n-1) term = -trace
    assert coeffs[0] == (-1) ** n * det_int(rows)
    assert coeffs[n - 1] == -sum(rows[i][i] for i in range(n))


def test_charpoly_cayley_hamilton():
    m = [[Fraction(1, 2), Fraction(3)], [Fraction(-1), Fraction(5, 3)]]
    c = charpoly_fractions(m)

    def matmul(a, b):
        return [
            [sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)
        ]

    ident = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    acc = [[Fraction(0)] * 2 for _ in range(2)]
    power = ident
    for coef in c:
        for i in range(2):
            for j in range(2):
                acc[i][j] += coef * power[i][j]
        power = matmul(power, m)
    assert all(acc[i][j] == 0 for i in range(2) for j in range(2))
