"""Classification of the coefficient prime q.

The equation x^4 + y^4 = q z^p is only worth attacking for some q.  Three
cheap screens run in priority order before a prime is declared interesting:

1. q != 1 (mod 8): the equation has no solution even locally at q, so there
   is nothing to prove (u^4 = -1 mod q is unsolvable).
2. q = a^4 + b^4: then (a, b, 1) solves the equation for every p, so
   non-existence is false outright.
3. q = (2A)^4 + B^2: the elimination method breaks down for such q (the
   mod-q argument that pins the Frey curve's conductor fails).

Everything that survives is `Interesting`: the sieve applies to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

from .errors import FactorizationIncompleteError, InvalidInputError
from .primes import is_prime, prime_divisors

__all__ = [
    "Classification",
    "classify",
    "has_local_solution",
    "biquadrate_sum",
    "even_fourth_plus_square",
    "check_divisor_residue",
    "search_solutions",
]

# exhaustive dual-route verification bound for has_local_solution
_SCAN_LIMIT = 1_000_000

NOT_ONE_MOD_8 = "NotOneMod8"
BIQUADRATE_SUM = "BiquadrateSum"
A4B2_FORM = "A4B2Form"
INTERESTING = "Interesting"


@dataclass(frozen=True, slots=True)
class Classification:
    q: int
    verdict: str
    witness: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.verdict == BIQUADRATE_SUM:
            a, b = self.witness  # type: ignore[misc]
            assert a**4 + b**4 == self.q
        elif self.verdict == A4B2_FORM:
            a, b = self.witness  # type: ignore[misc]
            assert (2 * a) ** 4 + b**2 == self.q
        elif self.witness is not None:
            raise InvalidInputError(f"verdict {self.verdict} carries no witness")

    @property
    def is_interesting(self) -> bool:
        return self.verdict == INTERESTING

    def __str__(self) -> str:
        if self.witness is None:
            return self.verdict
        return f"{self.verdict}({self.witness[0]},{self.witness[1]})"


def _fourth_root(n: int) -> int:
    """floor(n^(1/4)) for n >= 0."""
    return isqrt(isqrt(n))


def _nth_root(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0, k >= 1, by bisection (exact)."""
    if n < 0 or k < 1:
        raise InvalidInputError("nth root needs n >= 0, k >= 1")
    if n in (0, 1) or k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def has_local_solution(q: int) -> bool:
    """Whether u^4 = -1 (mod q) is solvable, i.e. whether x^4 + y^4 = q z^p
    can have solutions with q coprime to xy.

    Two routes: the congruence criterion q = 1 (mod 8), and (for q below a
    scan limit) exhaustive search over u; they must agree.
    """
    if q == 2 or not is_prime(q):
        raise InvalidInputError(f"{q} is not an odd prime")
    by_congruence = q % 8 == 1
    if q <= _SCAN_LIMIT:
        by_search = any(pow(u, 4, q) == q - 1 for u in range(1, q))
        assert by_search == by_congruence, f"local-solvability routes disagree at q={q}"
    return by_congruence


def biquadrate_sum(q: int) -> tuple[int, int] | None:
    """(a, b) with 0 < a <= b and a^4 + b^4 = q, or None."""
    if q < 2:
        raise InvalidInputError("q must be at least 2")
    a = 1
    while 2 * a**4 <= q:
        rest = q - a**4
        b = _fourth_root(rest)
        if b**4 == rest and b >= a:
            return (a, b)
        a += 1
    return None


def even_fourth_plus_square(q: int) -> tuple[int, int] | None:
    """(A, B) with A, B >= 1 and (2A)^4 + B^2 = q, or None."""
    if q < 2:
        raise InvalidInputError("q must be at least 2")
    a = 1
    while (2 * a) ** 4 < q:
        rest = q - (2 * a) ** 4
        b = isqrt(rest)
        if b >= 1 and b * b == rest:
            return (a, b)
        a += 1
    return None


def classify(q: int) -> Classification:
    """Dispatch q to its verdict, screens applied in priority order."""
    if not is_prime(q):
        raise InvalidInputError(f"{q} is not prime")
    if q == 2:
        # 2 = 1^4 + 1^4, the degenerate trivially-solvable case
        return Classification(2, BIQUADRATE_SUM, (1, 1))
    if not has_local_solution(q):
        return Classification(q, NOT_ONE_MOD_8)
    w = biquadrate_sum(q)
    if w is not None:
        return Classification(q, BIQUADRATE_SUM, w)
    w = even_fourth_plus_square(q)
    if w is not None:
        return Classification(q, A4B2_FORM, w)
    return Classification(q, INTERESTING)


def check_divisor_residue(a: int, b: int) -> bool:
    """Whether every odd prime dividing a^4 + b^4 is = 1 (mod 8).

    Lemma-verification oracle for coprime (a, b); expected always true.
    """
    if gcd(a, b) != 1:
        raise InvalidInputError(f"({a}, {b}) are not coprime")
    n = a**4 + b**4
    if n <= 1:
        raise InvalidInputError("a^4 + b^4 must exceed 1")
    fr = prime_divisors(n)
    if not fr.complete:
        raise FactorizationIncompleteError(
            f"cannot certify divisors of {n}: cofactor {fr.cofactor} unfactored"
        )
    return all(p == 2 or p % 8 == 1 for p in fr.primes)


def search_solutions(q: int, p: int, bound: int) -> list[tuple[int, int, int]]:
    """All (x, y, z) with 0 < x, y <= bound, gcd(x, y) = 1, z >= 1 and
    x^4 + y^4 = q z^p, sorted lexicographically.  Empirical oracle."""
    if bound < 1:
        raise InvalidInputError("bound must be >= 1")
    out = []
    for x in range(1, bound + 1):
        for y in range(1, bound + 1):
            if gcd(x, y) != 1:
                continue
            s = x**4 + y**4
            if s % q:
                continue
            m = s // q
            z = _nth_root(m, p)
            if z >= 1 and z**p == m:
                out.append((x, y, z))
    return sorted(out)
