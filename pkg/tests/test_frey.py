"""Frey curve construction, reductions, and the inert-prime trace scalar."""

from math import gcd, isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qfermat.errors import BadReductionError, InvalidInputError
from qfermat.frey import (
    build_curve,
    discriminant,
    frobenius_datum,
    inert_trace_scalar,
    point_count,
    splitting_type,
)
from qfermat.gaussian import GaussianInteger


def test_build_curve_validation():
    with pytest.raises(InvalidInputError):
        build_curve(1, 2)  # A odd
    with pytest.raises(InvalidInputError):
        build_curve(2, 4)  # not coprime
    e = build_curve(0, 1)
    assert e.a2 == GaussianInteger(0, 0)
    assert e.a4 == GaussianInteger(-1, 0)


def test_degenerate_curve_is_y2_x3_minus_x():
    assert discriminant(build_curve(0, 1)) == GaussianInteger(64, 0)


@given(st.integers(min_value=-25, max_value=25), st.integers(min_value=-50, max_value=50))
@settings(max_examples=150, deadline=None)
def test_discriminant_identity(half_a, b):
    a = 2 * half_a
    if gcd(a, b) != 1:
        return
    e = build_curve(a, b)
    i = GaussianInteger(0, 1)
    ia2 = i * GaussianInteger(a * a, 0)
    b2 = GaussianInteger(b * b, 0)
    d = (ia2 - b2) * (ia2 - b2) * (ia2 + b2)
    assert discriminant(e) == GaussianInteger(64 * d.re, 64 * d.im)
    # the odd part of the discriminant norm is (A^4+B^4)^3
    assert discriminant(e).norm == 4096 * (a**4 + b**4) ** 3


def test_splitting_type():
    assert splitting_type(2) == "ramified"
    assert splitting_type(5) == "split"
    assert splitting_type(13) == "split"
    assert splitting_type(3) == "inert"
    assert splitting_type(19) == "inert"
    with pytest.raises(InvalidInputError):
        splitting_type(15)


def test_point_count_pinned():
    e = build_curve(0, 1)
    # y^2 = x^3 - x over F_5: 7 affine points + infinity
    assert point_count(e, 5, 1) == 8
    # over F_9 = F_3[i]
    assert point_count(e, 3, 2) == 16


def _gauss_trace(t: int) -> int:
    """a_t for y^2 = x^3 - x at split t, via the two-squares normalization:
    t = a^2 + b^2 with a odd and a + b = 1 (mod 4) gives a_t = 2a."""
    for a in range(1, isqrt(t) + 1):
        b2 = t - a * a
        b = isqrt(b2)
        if b * b == b2 and a % 2 == 1:
            for sa in (a, -a):
                for sb in (b, -b):
                    if (sa + sb) % 4 == 1:
                        return 2 * sa
    raise AssertionError(f"no two-squares decomposition of {t}")


@pytest.mark.parametrize("t", [5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97])
def test_split_traces_match_gauss_formula(t):
    e = build_curve(0, 1)
    d = frobenius_datum(e, t)
    assert d.degree == 1 and d.splitting == "split"
    assert d.trace == _gauss_trace(t)
    # the curve is defined over Q, so both primes above t give one count
    assert point_count(e, t, 1, conjugate=True) == d.point_count


@pytest.mark.parametrize("t", [3, 7, 11, 19, 23, 31, 43])
def test_inert_scalar_vanishes_for_cm_curve(t):
    # y^2 = x^3 - x has CM by Z[i]; supersingular at inert t, so the
    # degree-2 trace is -2t and the scalar c is 0
    e = build_curve(0, 1)
    d = frobenius_datum(e, t)
    assert d.degree == 2 and d.trace == -2 * t
    assert inert_trace_scalar(e, t) == 0


@given(
    st.integers(min_value=-10, max_value=10),
    st.integers(min_value=-21, max_value=21),
    st.sampled_from([3, 7, 11, 19]),
)
@settings(max_examples=100, deadline=None)
def test_inert_scalar_is_integer_within_hasse(half_a, b, t):
    a = 2 * half_a
    if gcd(a, b) != 1:
        return
    e = build_curve(a, b)
    # odd bad primes divide A^4+B^4, whose odd prime divisors are 1 mod 8,
    # so an inert t always has good reduction
    c = inert_trace_scalar(e, t)
    assert 0 <= c and 2 * c * c <= 4 * t  # |c sqrt 2| within the Hasse bound


@given(
    st.integers(min_value=-10, max_value=10),
    st.integers(min_value=-21, max_value=21),
    st.sampled_from([5, 13, 17, 29]),
    st.booleans(),
)
@settings(max_examples=100, deadline=None)
def test_split_counts_satisfy_hasse(half_a, b, t, conj):
    a = 2 * half_a
    if gcd(a, b) != 1 or (a**4 + b**4) % t == 0:
        return
    e = build_curve(a, b)
    n = point_count(e, t, 1, conjugate=conj)
    assert (t + 1 - n) ** 2 <= 4 * t


def test_bad_reduction_raises():
    e = build_curve(2, 1)  # A^4 + B^4 = 17
    with pytest.raises(BadReductionError):
        point_count(e, 17, 1)
    with pytest.raises(InvalidInputError):
        point_count(e, 2, 1)  # ramified prime is out of scope


def test_point_count_degree_validation():
    e = build_curve(0, 1)
    with pytest.raises(InvalidInputError):
        point_count(e, 5, 2)  # split t cannot have degree 2
    with pytest.raises(InvalidInputError):
        point_count(e, 7, 1)  # inert t cannot have degree 1
    with pytest.raises(InvalidInputError):
        point_count(e, 7, 3)
    with pytest.raises(InvalidInputError):
        frobenius_datum(e, 2)


def test_inert_scalar_rejects_split_t():
    with pytest.raises(InvalidInputError):
        inert_trace_scalar(build_curve(0, 1), 5)
