"""Elements of a number field K = Q[x]/(h) in the power basis.

An element is a coordinate vector over Q against 1, alpha, ..., alpha^(d-1)
where h is the monic defining polynomial of degree d.  Arithmetic is exact
(Fraction coordinates); the characteristic polynomial of an element is the
characteristic polynomial of its multiplication matrix, computed fraction-
free.  For a Hecke eigenvalue a_n this char poly is what the elimination
sieve consumes: its roots are the Galois conjugates of a_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import InvalidInputError
from .linalg import charpoly_fractions
from .polynomials import IntPolynomial

__all__ = ["NumberFieldElement", "element_char_poly"]


@dataclass(frozen=True, slots=True)
class NumberFieldElement:
    """Coordinates of an element of Q[x]/(field), ascending power basis."""

    field: IntPolynomial
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.field.is_monic or self.field.degree < 1:
            raise InvalidInputError("defining polynomial must be monic of degree >= 1")
        if len(self.coords) != self.field.degree:
            raise InvalidInputError(
                f"expected {self.field.degree} coordinates, got {len(self.coords)}"
            )

    @staticmethod
    def of(field: IntPolynomial, coords) -> "NumberFieldElement":
        cs = tuple(Fraction(c) for c in coords)
        d = field.degree if not field.is_zero else 0
        if len(cs) < d:
            cs = cs + (Fraction(0),) * (d - len(cs))
        return NumberFieldElement(field, cs)

    @staticmethod
    def rational(field: IntPolynomial, value) -> "NumberFieldElement":
        return NumberFieldElement.of(field, (Fraction(value),))

    @staticmethod
    def generator(field: IntPolynomial) -> "NumberFieldElement":
        if field.degree == 1:
            # alpha = -constant term for a monic linear field polynomial
            return NumberFieldElement.of(field, (Fraction(-field[0]),))
        return NumberFieldElement.of(field, (0, 1))

    @property
    def degree(self) -> int:
        return self.field.degree

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def _same_field(self, other: "NumberFieldElement") -> None:
        if self.field != other.field:
            raise InvalidInputError("elements live in different fields")

    def __add__(self, other: "NumberFieldElement") -> "NumberFieldElement":
        self._same_field(other)
        return NumberFieldElement(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "NumberFieldElement") -> "NumberFieldElement":
        self._same_field(other)
        return NumberFieldElement(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "NumberFieldElement":
        return NumberFieldElement(self.field, tuple(-a for a in self.coords))

    def scale(self, k) -> "NumberFieldElement":
        kf = Fraction(k)
        return NumberFieldElement(self.field, tuple(kf * a for a in self.coords))

    def __mul__(self, other: "NumberFieldElement") -> "NumberFieldElement":
        self._same_field(other)
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        # reduce modulo the monic field polynomial: x^d = -(lower terms)
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = Fraction(0)
                for j in range(d):
                    prod[i - d + j] -= c * self.field[j]
        return NumberFieldElement(self.field, tuple(prod[:d]))

    def __pow__(self, n: int) -> "NumberFieldElement":
        if n < 0:
            raise InvalidInputError("negative powers are not supported")
        out = NumberFieldElement.rational(self.field, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """M[i][j] = coordinate i of (self * alpha^j)."""
        d = self.degree
        cols = []
        cur = self
        gen = NumberFieldElement.generator(self.field)
        for _ in range(d):
            cols.append(cur.coords)
            cur = cur * gen
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def trace(self) -> Fraction:
        """Field trace Tr(K/Q) of the element."""
        m = self.multiplication_matrix()
        return sum((m[i][i] for i in range(self.degree)), Fraction(0))

    def denominator_lcm(self) -> int:
        return lcm(*(c.denominator for c in self.coords)) if self.coords else 1


def element_char_poly(elem: NumberFieldElement) -> IntPolynomial:
    """Characteristic polynomial of the element acting on K by multiplication
    (degree = [K:Q]), with denominators cleared to a primitive integer
    polynomial.  For an algebraic integer the result is monic, and its roots
    are the Galois conjugates of the element with multiplicity."""
    if elem.degree == 1:
        # charpoly of a rational scalar r is x - r, cleared of denominators
        r = elem.coords[0]
        return IntPolynomial.make((-r.numerator, r.denominator)).primitive()
    coeffs = charpoly_fractions(elem.multiplication_matrix())
    den = lcm(*(c.denominator for c in coeffs))
    out = IntPolynomial.make(int(c * den) for c in coeffs)
    return out.primitive()
