"""The Frey Q-curve attached to a hypothetical solution.

A putative primitive solution A^4 + B^4 = q C^p (A even) yields the elliptic
curve over Q(i)

    E_(A,B):  y^2 = x^3 + 2(1+i)A x^2 + (-B^2 + i A^2) x

whose discriminant 64 (iA^2 - B^2)^2 (iA^2 + B^2) concentrates the solution's
arithmetic: its odd bad primes divide A^4 + B^4 = q C^p.  The attached
weight-2 form has an inner twist forcing its eigenvalue at an inert prime
t = 3 (mod 4) to be c*sqrt(2) for a rational integer c.  This module builds
the curve, counts points over the residue fields (naive enumeration), and
recovers c from the count via the restriction-of-scalars Euler factor

    x^4 - a_{t^2}(E) x^2 + t^2   =>   2 c^2 = a_{t^2}(E) + 2t.

The convention behind that factorization is calibrated elsewhere against the
level-32 form; a failing calibration raises instead of producing numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import BadReductionError, CalibrationError, InvalidInputError
from .gaussian import GaussianInteger
from .primes import is_prime, sqrt_mod

__all__ = [
    "EllipticCurveOverQi",
    "FrobeniusDatum",
    "build_curve",
    "discriminant",
    "point_count",
    "inert_trace_scalar",
    "frobenius_datum",
    "splitting_type",
]


@dataclass(frozen=True, slots=True)
class EllipticCurveOverQi:
    """Model y^2 = x^3 + a2 x^2 + a4 x over Q(i), from the pair (A, B)."""

    a2: GaussianInteger
    a4: GaussianInteger
    A: int
    B: int


@dataclass(frozen=True, slots=True)
class FrobeniusDatum:
    """Point count and trace of the reduction at a rational prime t."""

    t: int
    splitting: str  # "split" | "inert" | "ramified"
    degree: int
    point_count: int
    trace: int

    def __post_init__(self) -> None:
        size = self.t**self.degree
        assert self.trace * self.trace <= 4 * size, "Hasse bound violated"


def build_curve(A: int, B: int) -> EllipticCurveOverQi:
    """Construct E_(A,B).  Requires gcd(A, B) = 1 and A even (any primitive
    solution can be arranged that way, and the conductor computation at 2
    assumes it)."""
    if A % 2 != 0:
        raise InvalidInputError(f"A must be even (got {A})")
    if gcd(A, B) != 1:
        raise InvalidInputError(f"(A, B) must be coprime (got {A}, {B})")
    a2 = GaussianInteger(2 * A, 2 * A)  # 2(1+i)A
    a4 = GaussianInteger(-B * B, A * A)  # -B^2 + i A^2
    return EllipticCurveOverQi(a2, a4, A, B)


def discriminant(curve: EllipticCurveOverQi) -> GaussianInteger:
    """Delta = 16 a4^2 (a2^2 - 4 a4), which factors as
    64 (iA^2 - B^2)^2 (iA^2 + B^2)."""
    a2, a4 = curve.a2, curve.a4
    four_a4 = GaussianInteger(4 * a4.re, 4 * a4.im)
    d = a4 * a4 * (a2 * a2 - four_a4)
    return GaussianInteger(16 * d.re, 16 * d.im)


def splitting_type(t: int) -> str:
    """Behavior of the rational prime t in Z[i]."""
    if not is_prime(t):
        raise InvalidInputError(f"{t} is not prime")
    if t == 2:
        return "ramified"
    return "split" if t % 4 == 1 else "inert"


def _residue_params(t: int, degree: int, conjugate: bool) -> int | None:
    """For degree 1 (split t), the image of i in F_t; None for degree 2."""
    if degree == 1:
        r = sqrt_mod(t - 1, t)  # r^2 = -1 (mod t)
        return t - r if conjugate else r
    return None


def point_count(
    curve: EllipticCurveOverQi, t: int, degree: int, *, conjugate: bool = False
) -> int:
    """Projective points of the reduction of `curve` over the field with
    t^degree elements, point at infinity included, by enumeration.

    degree 2 reduces modulo the inert prime t (t = 3 mod 4); degree 1
    reduces modulo one of the two primes above a split t (t = 1 mod 4),
    `conjugate` selecting which.  Bad reduction raises.
    """
    if t == 2 or not is_prime(t):
        raise InvalidInputError(f"t must be an odd prime (got {t})")
    split = splitting_type(t)
    if degree == 2 and split != "inert":
        raise InvalidInputError(f"degree 2 needs t = 3 (mod 4), got t={t}")
    if degree == 1 and split != "split":
        raise InvalidInputError(f"degree 1 needs t = 1 (mod 4), got t={t}")
    if degree not in (1, 2):
        raise InvalidInputError("degree must be 1 or 2")
    delta = discriminant(curve)
    if delta.norm % t == 0:
        raise BadReductionError(f"E_({curve.A},{curve.B}) has bad reduction at {t}")

    if degree == 1:
        r = _residue_params(t, 1, conjugate)
        a2 = (curve.a2.re + curve.a2.im * r) % t
        a4 = (curve.a4.re + curve.a4.im * r) % t
        # square counts: squares[v] = number of y in F_t with y^2 = v
        counts = [0] * t
        for y in range(t):
            counts[y * y % t] += 1
        total = 1  # infinity
        for x in range(t):
            w = (x * x * x + a2 * x * x + a4 * x) % t
            total += counts[w]
        return total

    # degree 2: F_{t^2} = F_t[i], i^2 = -1 (valid since t = 3 mod 4)
    a2 = (curve.a2.re % t, curve.a2.im % t)
    a4 = (curve.a4.re % t, curve.a4.im % t)

    def mul(u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        return ((u[0] * v[0] - u[1] * v[1]) % t, (u[0] * v[1] + u[1] * v[0]) % t)

    counts2: dict[tuple[int, int], int] = {}
    for yr in range(t):
        for yi in range(t):
            s = mul((yr, yi), (yr, yi))
            counts2[s] = counts2.get(s, 0) + 1
    total = 1
    for xr in range(t):
        for xi in range(t):
            x = (xr, xi)
            x2 = mul(x, x)
            x3 = mul(x2, x)
            w = (
                (x3[0] + a2[0] * x2[0] - a2[1] * x2[1] + a4[0] * x[0] - a4[1] * x[1]) % t,
                (x3[1] + a2[0] * x2[1] + a2[1] * x2[0] + a4[0] * x[1] + a4[1] * x[0]) % t,
            )
            total += counts2.get(w, 0)
    return total


def frobenius_datum(
    curve: EllipticCurveOverQi, t: int, *, conjugate: bool = False
) -> FrobeniusDatum:
    """Point count and trace at t, with the residue degree implied by the
    splitting of t in Z[i]."""
    split = splitting_type(t)
    if split == "ramified":
        raise InvalidInputError("t = 2 is not supported (ramified in Z[i])")
    degree = 1 if split == "split" else 2
    n = point_count(curve, t, degree, conjugate=conjugate)
    return FrobeniusDatum(t, split, degree, n, t**degree + 1 - n)


def inert_trace_scalar(curve: EllipticCurveOverQi, t: int) -> int:
    """The integer c >= 0 with a_t = c*sqrt(2) for the form attached to the
    curve, from the curve side: 2c^2 = a_{t^2}(E) + 2t.

    t must be inert (t = 3 mod 4) with good reduction.  If no integer c
    fits, the Euler-factor convention is broken: that is an error, not a
    value.
    """
    if t % 4 != 3:
        raise InvalidInputError(f"t must be 3 (mod 4), got {t}")
    a_t2 = t * t + 1 - point_count(curve, t, 2)
    target = a_t2 + 2 * t
    if target < 0 or target % 2 != 0:
        raise CalibrationError(
            f"a_(t^2) + 2t = {target} is not twice a square at t={t}"
        )
    c = isqrt(target // 2)
    if 2 * c * c != target:
        raise CalibrationError(
            f"a_(t^2) + 2t = {target} is not twice a square at t={t}"
        )
    return c
