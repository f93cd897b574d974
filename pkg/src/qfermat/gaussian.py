"""Arithmetic in Z[i], the Gaussian integers.

Used for two jobs: splitting a rational prime q = 1 (mod 4) as pi * pibar,
and computing valuations of integer expressions at those primes.  Division
rounds to the nearest Gaussian integer, which makes Z[i] Euclidean for the
norm and keeps gcds terminating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfiniteValuationError, InvalidInputError
from .primes import is_prime, sqrt_mod

__all__ = ["GaussianInteger", "prime_above", "valuation"]


def _round_div(a: int, n: int) -> int:
    """Nearest integer to a/n for n > 0, ties rounding up."""
    return (2 * a + n) // (2 * n)


@dataclass(frozen=True, slots=True)
class GaussianInteger:
    re: int
    im: int = 0

    @property
    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussianInteger":
        return GaussianInteger(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_unit(self) -> bool:
        return self.norm == 1

    def __add__(self, w: "GaussianInteger") -> "GaussianInteger":
        return GaussianInteger(self.re + w.re, self.im + w.im)

    def __sub__(self, w: "GaussianInteger") -> "GaussianInteger":
        return GaussianInteger(self.re - w.re, self.im - w.im)

    def __neg__(self) -> "GaussianInteger":
        return GaussianInteger(-self.re, -self.im)

    def __mul__(self, w: "GaussianInteger") -> "GaussianInteger":
        return GaussianInteger(
            self.re * w.re - self.im * w.im,
            self.re * w.im + self.im * w.re,
        )

    def __divmod__(self, w: "GaussianInteger") -> tuple["GaussianInteger", "GaussianInteger"]:
        if w.is_zero:
            raise ZeroDivisionError("division by zero in Z[i]")
        n = w.norm
        zc = self * w.conj()
        q = GaussianInteger(_round_div(zc.re, n), _round_div(zc.im, n))
        return q, self - q * w
        # nearest rounding gives N(remainder) <= N(w)/2 < N(w)

    def __floordiv__(self, w: "GaussianInteger") -> "GaussianInteger":
        return divmod(self, w)[0]

    def __mod__(self, w: "GaussianInteger") -> "GaussianInteger":
        return divmod(self, w)[1]

    def divides(self, z: "GaussianInteger") -> bool:
        return (z % self).is_zero

    def canonical_associate(self) -> "GaussianInteger":
        """The unit multiple with re > 0 and im >= 0 (zero stays zero)."""
        z = self
        if z.is_zero:
            return z
        for _ in range(4):
            if z.re > 0 and z.im >= 0:
                return z
            z = GaussianInteger(-z.im, z.re)  # multiply by i
        raise AssertionError("unit rotation failed to normalize")

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        mag = abs(self.im)
        imag = "i" if mag == 1 else f"{mag}*i"
        return f"{self.re}{sign}{imag}" if self.re else (f"-{imag}" if sign == "-" else imag)


def gcd(z: GaussianInteger, w: GaussianInteger) -> GaussianInteger:
    """Greatest common divisor in Z[i], returned as the canonical associate."""
    while not w.is_zero:
        z, w = w, z % w
    return z.canonical_associate()


def is_gaussian_prime(z: GaussianInteger) -> bool:
    n = z.norm
    if n <= 1:
        return False
    if is_prime(n):
        return True
    # inert rational primes: +-p, +-p*i with p = 3 (mod 4)
    if z.re == 0 or z.im == 0:
        p = abs(z.re) + abs(z.im)
        return p % 4 == 3 and is_prime(p)
    return False


def prime_above(q: int) -> GaussianInteger:
    """For a prime q = 1 (mod 4), one of the two Gaussian primes over q,
    normalized so re > im > 0.  Its conjugate is the other one.

    The splitting comes from a square root r of -1 mod q: pi = gcd(q, r + i).
    """
    if not is_prime(q) or q % 4 != 1:
        raise InvalidInputError(f"{q} does not split in Z[i] (need a prime = 1 mod 4)")
    r = sqrt_mod(q - 1, q)
    pi = gcd(GaussianInteger(q), GaussianInteger(r, 1))
    a, b = abs(pi.re), abs(pi.im)
    if a < b:
        a, b = b, a
    pi = GaussianInteger(a, b)
    assert pi.norm == q and pi.re > pi.im > 0
    return pi


def valuation(z: GaussianInteger, pi: GaussianInteger) -> int:
    """pi-adic valuation of z: the exact power of the Gaussian prime pi
    dividing z.  Infinite for z = 0 (raises)."""
    if z.is_zero:
        raise InfiniteValuationError("valuation of 0 is infinite")
    if not is_gaussian_prime(pi):
        raise InvalidInputError(f"{pi} is not a Gaussian prime")
    v = 0
    while True:
        q, r = divmod(z, pi)
        if not r.is_zero:
            return v
        z = q
        v += 1
