"""Exact univariate polynomial arithmetic over Z.

Coefficients are arbitrary-precision integers, stored in ascending order with
no trailing zeros (the zero polynomial has an empty coefficient tuple, degree
-1 by convention).  Everything here is fraction-free: resultants use the
subresultant polynomial remainder sequence, so no rational arithmetic and no
floating point ever enters a proof-bearing value.

Sign convention for resultants:  Res(f, g) = lc(f)^deg(g) * prod g(alpha_i)
over the roots alpha_i of f, which equals the determinant of the Sylvester
matrix of (f, g).  In particular Res(x - 2, x - 5) = -3, and
Res(g, f) = (-1)^(deg f * deg g) Res(f, g).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidInputError

__all__ = [
    "IntPolynomial",
    "resultant",
    "poly_gcd",
    "root_squares_poly",
    "count_real_roots_greater",
]


def _trim(coeffs: Sequence[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True, slots=True)
class IntPolynomial:
    """Immutable polynomial in Z[x], coefficients ascending."""

    coeffs: tuple[int, ...]

    @staticmethod
    def make(coeffs: Iterable[int]) -> "IntPolynomial":
        cs = tuple(int(c) for c in coeffs)
        return IntPolynomial(_trim(cs))

    @staticmethod
    def constant(c: int) -> "IntPolynomial":
        return IntPolynomial.make((c,))

    @staticmethod
    def x_power(n: int, lead: int = 1) -> "IntPolynomial":
        if n < 0:
            raise InvalidInputError("exponent must be nonnegative")
        return IntPolynomial.make((0,) * n + (lead,))

    def __post_init__(self) -> None:
        if self.coeffs and self.coeffs[-1] == 0:
            raise InvalidInputError("coefficients carry a trailing zero")

    # ----- basic structure -----

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        if self.is_zero:
            raise InvalidInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def content(self) -> int:
        """gcd of the coefficients, nonnegative; 0 for the zero polynomial."""
        g = 0
        for c in self.coeffs:
            g = _gcd(g, c)
            if g == 1:
                return 1
        return g

    def primitive(self) -> "IntPolynomial":
        """Divide out the content, keeping the sign of the leading term."""
        g = self.content()
        if g in (0, 1):
            return self
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    # ----- ring operations -----

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(_trim(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(_trim(out))

    def scale(self, k: int) -> "IntPolynomial":
        if k == 0:
            return IntPolynomial(())
        return IntPolynomial(tuple(k * c for c in self.coeffs))

    def shift(self, n: int) -> "IntPolynomial":
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * n + self.coeffs)

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(_trim([i * c for i, c in enumerate(self.coeffs)][1:]))

    def __call__(self, x: int | Fraction) -> int | Fraction:
        acc: int | Fraction = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            if i == 0:
                term = str(abs(c))
            else:
                mag = "" if abs(c) == 1 else f"{abs(c)}*"
                term = f"{mag}x" if i == 1 else f"{mag}x^{i}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """prem(a, b): remainder of lc(b)^(deg a - deg b + 1) * a by b, in Z[x]."""
    db, lb = b.degree, b.leading
    r = a
    e = a.degree - db + 1
    while not r.is_zero and r.degree >= db:
        shift = r.degree - db
        r = r.scale(lb) - b.scale(r.leading).shift(shift)
        e -= 1
    if e > 0:
        r = r.scale(lb**e)
    return r


def resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Resultant of f and g via the subresultant PRS (fraction-free).

    Zero exactly when f and g share a nonconstant common factor.  Inputs may
    not both be zero; a single zero input returns 0 (it shares any factor).
    """
    if f.is_zero and g.is_zero:
        raise InvalidInputError("resultant of two zero polynomials")
    if f.is_zero or g.is_zero:
        return 0
    if f.degree == 0 and g.degree == 0:
        return 1
    a, b = f, g
    s = 1
    if a.degree < b.degree:
        if (a.degree * b.degree) % 2 == 1:
            s = -1
        a, b = b, a
    # deg a >= deg b >= 0, deg a >= 1
    ca, cb = a.content(), b.content()
    t = s * ca ** b.degree * cb ** a.degree
    a, b = a.primitive(), b.primitive()
    g_, h_ = 1, 1
    sgn = 1
    while b.degree > 0:
        delta = a.degree - b.degree
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            sgn = -sgn
        r = _pseudo_rem(a, b)
        a = b
        div = g_ * h_**delta
        b = IntPolynomial(tuple(c // div for c in r.coeffs))
        g_ = a.leading
        h_ = h_ ** (1 - delta) * g_**delta if delta <= 1 else g_**delta // h_ ** (delta - 1)
    if b.is_zero:
        return 0
    # b is a nonzero constant; close the subresultant bookkeeping
    res = sgn * b.coeffs[0] ** a.degree
    if a.degree > 1:
        assert res % h_ ** (a.degree - 1) == 0
        res //= h_ ** (a.degree - 1)
    return t * res


def poly_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """gcd in Z[x], primitive with positive leading coefficient (or content
    gcd when both are constants)."""
    if f.is_zero and g.is_zero:
        return IntPolynomial(())
    if f.is_zero:
        f, g = g, f
    if g.is_zero:
        out = f.primitive()
        return -out if out.leading < 0 else out
    cont = _gcd(f.content(), g.content())
    a, b = f.primitive(), g.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero and b.degree > 0:
        r = _pseudo_rem(a, b).primitive()
        a, b = b, r
    if not b.is_zero:
        # a nonzero constant remainder: the primitive parts are coprime
        return IntPolynomial.constant(cont)
    out = a.primitive()
    if out.leading < 0:
        out = -out
    return out.scale(cont) if out.degree == 0 else out


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """f with repeated roots collapsed to multiplicity one (primitive)."""
    if f.is_zero or f.degree == 0:
        return f
    g = poly_gcd(f, f.derivative())
    if g.degree == 0:
        return f.primitive()
    q, r = _exact_div(f, g)
    assert r.is_zero
    return q.primitive()


def _exact_div(f: IntPolynomial, g: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """Divide f by g over Q.  Returns (quotient, zero) when the division is
    exact with an integer quotient, else (zero, f) untouched."""
    if g.is_zero:
        raise InvalidInputError("division by the zero polynomial")
    if f.is_zero:
        return IntPolynomial(()), IntPolynomial(())
    dq, dg = f.degree, g.degree
    if dq < dg:
        return IntPolynomial(()), f
    rem = [Fraction(c) for c in f.coeffs]
    lg = Fraction(g.leading)
    quot = [Fraction(0)] * (dq - dg + 1)
    for i in range(dq - dg, -1, -1):
        c = rem[i + dg] / lg
        quot[i] = c
        if c:
            for j, gc in enumerate(g.coeffs):
                rem[i + j] -= c * gc
    if any(rem[:dg]) or any(c.denominator != 1 for c in quot):
        return IntPolynomial(()), f
    return IntPolynomial.make(int(c) for c in quot), IntPolynomial(())


def root_squares_poly(f: IntPolynomial) -> IntPolynomial:
    """For monic f of degree n, the monic degree-n polynomial whose roots are
    the squares of the roots of f:  (-1)^n (fe(y)^2 - y * fo(y)^2)  where
    f(x) = fe(x^2) + x * fo(x^2)."""
    if not f.is_monic:
        raise InvalidInputError("root_squares_poly expects a monic polynomial")
    fe = IntPolynomial(_trim(f.coeffs[0::2]))
    fo = IntPolynomial(_trim(f.coeffs[1::2]))
    out = fe * fe - (fo * fo).shift(1)
    return -out if f.degree % 2 == 1 else out


def _sturm_chain(f: IntPolynomial) -> list[IntPolynomial]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero and chain[-1].degree > 0:
        # negated primitive pseudo-remainder: positive scaling keeps signs
        r = _pseudo_rem(chain[-2], chain[-1])
        if chain[-1].leading < 0 and (chain[-2].degree - chain[-1].degree) % 2 == 0:
            # prem scaled by lc^(delta+1); odd power of a negative lc flips
            # signs, undo so the chain obeys the Sturm sign conditions
            r = -r
        chain.append((-r).primitive())
    if chain[-1].is_zero:
        chain.pop()
    return chain


def _sign_variations(values: list[int]) -> int:
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots_greater(f: IntPolynomial, a: int | Fraction) -> int:
    """Number of distinct real roots of f strictly greater than a."""
    if f.is_zero:
        raise InvalidInputError("zero polynomial has every point as a root")
    g = squarefree_part(f)
    # deflate a zero at the endpoint so the Sturm count is clean
    while g(a) == 0:
        num, den = Fraction(a).numerator, Fraction(a).denominator
        g, r = _exact_div(g.primitive(), IntPolynomial.make((-num, den)))
        assert r.is_zero
        g = g.primitive()
    chain = _sturm_chain(g)
    at_a = [_sign_int(p(a)) for p in chain]
    at_inf = [_sign_int(p.leading) for p in chain]
    return _sign_variations(at_a) - _sign_variations(at_inf)


def _sign_int(v: int | Fraction) -> int:
    return 1 if v > 0 else (-1 if v < 0 else 0)
