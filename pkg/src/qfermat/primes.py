"""Primality, factorization, and prime-set algebra.

Factorization here serves one purpose: turning resultant values into the set
of primes dividing them.  Those sets feed an elimination argument, so the
failure mode must be conservative: if a cofactor resists factoring within the
effort budget, the result records that explicitly instead of guessing, and
downstream consumers over-approximate (a survivor set may only ever be too
big, never too small).

`PrimeSet` models the three shapes the pipeline needs: a finite set, the set
of all primes, and "this finite set plus every prime >= B" (the conservative
closure of an unfactored cofactor).
"""

from __future__ import annotations

import bisect
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidInputError

__all__ = [
    "TRIAL_DIVISION_LIMIT",
    "is_prime",
    "small_primes",
    "primes_up_to",
    "sqrt_mod",
    "FactorResult",
    "prime_divisors",
    "PrimeSet",
]

TRIAL_DIVISION_LIMIT = 1_000_000
_small_prime_cache: tuple[int, ...] | None = None

# Miller-Rabin with these witnesses is a proof of primality below this bound
# (Sorenson-Webster).
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA_ROUNDS = 24


def small_primes() -> tuple[int, ...]:
    """Primes below 10^6, sieved once and cached."""
    global _small_prime_cache
    if _small_prime_cache is None:
        _small_prime_cache = _sieve(TRIAL_DIVISION_LIMIT)
    return _small_prime_cache


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * limit
    flags[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(range(p * p, limit, p))
    return tuple(i for i in range(limit) if flags[i])


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit (limit must stay below the trial-division bound)."""
    if limit >= TRIAL_DIVISION_LIMIT:
        raise InvalidInputError(f"primes_up_to supports limits below {TRIAL_DIVISION_LIMIT}")
    sp = small_primes()
    return list(sp[: bisect.bisect_right(sp, limit)])


def _miller_rabin_witness(n: int, a: int, d: int, r: int) -> bool:
    """True when a witnesses that n is composite."""
    x = pow(a, d, n)
    if x in (1, n - 1):
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Primality test: exact below ~3.3e24, else Miller-Rabin with the fixed
    witness list plus 24 witnesses derived deterministically from n."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if _miller_rabin_witness(n, a, d, r):
            return False
    if n < _MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(n)
    for _ in range(_MR_EXTRA_ROUNDS):
        a = rng.randrange(2, n - 1)
        if _miller_rabin_witness(n, a, d, r):
            return False
    return True


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks: r with r^2 = a (mod p), p an odd prime.  Returns the
    smaller of the two roots.  Raises if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        raise InvalidInputError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # write p - 1 = q * 2^s with q odd
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def _brent_rho(n: int, c: int, max_iters: int) -> int | None:
    """Brent's cycle variant of Pollard rho with batched gcds.  Returns a
    nontrivial factor of composite odd n, or None within the budget."""
    if n % 2 == 0:
        return 2
    y, m = 2, 128
    g = q = r = 1
    x = ys = y
    iters = 0
    while g == 1 and iters < max_iters:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = _gcd(q, n)
            k += m
        iters += r
        r *= 2
    if g == n:
        # backtrack one step at a time to recover the factor
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = _gcd(abs(x - ys), n)
    if g in (1, n):
        return None
    return g


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True, slots=True)
class FactorResult:
    """Distinct prime divisors found, plus the unfactored composite part
    (1 when factorization completed)."""

    primes: tuple[int, ...]
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1


def prime_divisors(n: int, *, rho_budget: int = 4_000_000) -> FactorResult:
    """Distinct primes dividing n (n nonzero; sign ignored).

    Trial division below 10^6, then Brent-Pollard rho on what remains with a
    deterministic polynomial-shift schedule.  Composites the budget cannot
    split end up multiplied into `cofactor`.
    """
    if n == 0:
        raise InvalidInputError("0 is divisible by every prime")
    n = abs(n)
    found: set[int] = set()
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            found.add(p)
            while n % p == 0:
                n //= p
    cofactor = 1
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found.add(m)
            continue
        f = None
        for c in (1, 3, 5, 7, 11):
            f = _brent_rho(m, c, rho_budget)
            if f is not None:
                break
        if f is None:
            cofactor *= m
        else:
            stack.append(f)
            stack.append(m // f)
    return FactorResult(tuple(sorted(found)), cofactor)


@dataclass(frozen=True, slots=True)
class PrimeSet:
    """A set of primes: `finite` members plus, when `tail` is not None, every
    prime >= `tail`.  The set of all primes is tail=2 with no finite part."""

    finite: tuple[int, ...] = ()
    tail: int | None = None

    @staticmethod
    def of(primes: Iterator[int] | tuple[int, ...] | list[int] | set[int] = (),
           tail: int | None = None) -> "PrimeSet":
        """Canonical constructor: sorts, deduplicates, folds finite members
        covered by the tail into it."""
        ps = sorted(set(primes))
        if tail is not None:
            ps = [p for p in ps if p < tail]
        return PrimeSet(tuple(ps), tail)

    @staticmethod
    def all_primes() -> "PrimeSet":
        return PrimeSet((), 2)

    @property
    def is_all(self) -> bool:
        return self.tail is not None and self.tail <= 2

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    @property
    def is_empty(self) -> bool:
        return not self.finite and self.tail is None

    def __contains__(self, p: int) -> bool:
        return p in self.finite or (self.tail is not None and p >= self.tail)

    def __iter__(self) -> Iterator[int]:
        if not self.is_finite:
            raise InvalidInputError("cannot enumerate an infinite prime set")
        return iter(self.finite)

    def intersect(self, other: "PrimeSet") -> "PrimeSet":
        tail = None
        if self.tail is not None and other.tail is not None:
            tail = max(self.tail, other.tail)
        keep = [p for p in self.finite if p in other]
        keep += [p for p in other.finite if p in self]
        return PrimeSet.of(keep, tail)

    def union(self, other: "PrimeSet") -> "PrimeSet":
        if self.tail is None:
            tail = other.tail
        elif other.tail is None:
            tail = self.tail
        else:
            tail = min(self.tail, other.tail)
        return PrimeSet.of(self.finite + other.finite, tail)

    def restrict_greater(self, bound: int) -> "PrimeSet":
        """Members strictly greater than bound."""
        tail = self.tail if self.tail is None else max(self.tail, bound + 1)
        return PrimeSet.of((p for p in self.finite if p > bound), tail)

    def restrict_at_most(self, bound: int) -> "PrimeSet":
        """Finite members <= bound (tail is cut; caller owns that choice)."""
        return PrimeSet.of(p for p in self.finite if p <= bound)

    def to_json(self) -> list[int] | str:
        """Report encoding: "ALL" whenever a tail is present (conservative),
        else the sorted list."""
        if self.tail is not None:
            return "ALL"
        return list(self.finite)
