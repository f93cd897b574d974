"""Number field element arithmetic and characteristic polynomials."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qfermat.errors import InvalidInputError
from qfermat.numberfield import NumberFieldElement, element_char_poly
from qfermat.polynomials import IntPolynomial

SQRT2 = IntPolynomial.make([-2, 0, 1])  # x^2 - 2
CUBIC = IntPolynomial.make([-1, -2, 0, 1])  # x^3 - 2x - 1 = (x+1)(x^2-x-1)
X = IntPolynomial.make([0, 1])

coords2 = st.tuples(
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
    st.fractions(min_value=-5, max_value=5, max_denominator=6),
)


def el2(c):
    return NumberFieldElement.of(SQRT2, c)


@given(coords2, coords2, coords2)
@settings(max_examples=120, deadline=None)
def test_field_axioms_sqrt2(a, b, c):
    ea, eb, ec = el2(a), el2(b), el2(c)
    assert (ea + eb) * ec == ea * ec + eb * ec
    assert ea * eb == eb * ea
    assert (ea * eb) * ec == ea * (eb * ec)


def test_sqrt2_squares_to_two():
    gen = NumberFieldElement.generator(SQRT2)
    assert gen * gen == NumberFieldElement.rational(SQRT2, 2)
    assert gen ** 4 == NumberFieldElement.rational(SQRT2, 4)
    assert element_char_poly(gen) == SQRT2


def test_generator_of_linear_field_is_the_root():
    lin = IntPolynomial.make([-7, 1])  # x - 7
    gen = NumberFieldElement.generator(lin)
    assert gen.coords == (Fraction(7),)
    assert element_char_poly(gen) == lin


def test_trace_and_charpoly_sqrt2():
    # 1 + sqrt2: trace 2, norm -1, char poly x^2 - 2x - 1
    e = el2((1, 1))
    assert e.trace() == 2
    assert element_char_poly(e) == IntPolynomial.make([-1, -2, 1])
    # pure sqrt2 multiple: 3*sqrt2 has char poly x^2 - 18
    assert element_char_poly(el2((0, 3))) == IntPolynomial.make([-18, 0, 1])


@given(coords2)
@settings(max_examples=100, deadline=None)
def test_charpoly_annihilates_element(c):
    e = el2(c)
    f = element_char_poly(e)
    acc = NumberFieldElement.rational(SQRT2, 0)
    power = NumberFieldElement.rational(SQRT2, 1)
    for k in range(f.degree + 1):
        acc = acc + power.scale(f[k])
        power = power * e
    # element_char_poly is primitive, not monic, when coords have denominators;
    # it still annihilates the element
    assert acc.is_zero


@given(coords2)
@settings(max_examples=100, deadline=None)
def test_multiplication_matrix_consistency(c):
    e = el2(c)
    m = e.multiplication_matrix()
    gen = NumberFieldElement.generator(SQRT2)
    basis = [NumberFieldElement.rational(SQRT2, 1), gen]
    for j, bj in enumerate(basis):
        prod = e * bj
        assert tuple(m[i][j] for i in range(2)) == prod.coords
    assert e.trace() == sum(m[i][i] for i in range(2))


def test_charpoly_in_cubic_field_matches_sympy():
    e = NumberFieldElement.of(CUBIC, (1, 2, -1))
    got = element_char_poly(e)
    x = sympy.Symbol("x")
    alpha = sympy.Symbol("alpha")
    # resultant over the defining polynomial gives the same char poly for
    # a generator-free cross-check
    defining = sum(CUBIC[k] * alpha**k for k in range(CUBIC.degree + 1))
    res = sympy.resultant(defining, x - (1 + 2 * alpha - alpha**2), alpha)
    want = sympy.Poly(sympy.expand(res), x).all_coeffs()[::-1]
    assert [got[k] for k in range(got.degree + 1)] == [int(c) for c in want]


def test_rational_element_char_poly_has_degree_of_field():
    e = NumberFieldElement.rational(CUBIC, 3)
    assert element_char_poly(e) == IntPolynomial.make([-27, 27, -9, 1])  # (x-3)^3


def test_denominator_lcm():
    e = el2((Fraction(1, 6), Fraction(3, 4)))
    assert e.denominator_lcm() == 12
    assert el2((1, 2)).denominator_lcm() == 1


def test_mixed_field_arithmetic_rejected():
    a = NumberFieldElement.generator(SQRT2)
    b = NumberFieldElement.generator(CUBIC)
    with pytest.raises(InvalidInputError):
        _ = a + b
    with pytest.raises(InvalidInputError):
        _ = a * b


def test_bad_constructions_rejected():
    with pytest.raises(InvalidInputError):
        NumberFieldElement(IntPolynomial.make([2, 2]), (Fraction(0),))  # not monic
    with pytest.raises(InvalidInputError):
        NumberFieldElement(SQRT2, (Fraction(0),))  # wrong length
    with pytest.raises(InvalidInputError):
        _ = NumberFieldElement.generator(SQRT2) ** -1
