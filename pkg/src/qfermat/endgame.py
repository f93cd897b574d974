"""Resolution of a residual (q, p) survivor by congruence and valuation.

The sieve can leave a pair it cannot eliminate (for q = 73 that is p = 17 on
one form).  Two computations close it:

1. The surviving form is congruent mod 17 to the CM form of level 32, checked
   coefficient-by-coefficient up to the Sturm bound of the larger level, at a
   prime above 17 in the Hecke field.  By Sturm's theorem the finitely many
   checks prove the full congruence; the congruence forces the zero-trace
   pattern b_t = 0 (mod 17) at every inert t.
2. A congruence with a level-32 form would let the mod-17 representation of a
   solution curve arise at level 32, i.e. with q removed from the level; that
   is only possible when 17 divides the discriminant valuations at the
   Gaussian primes over q.  Those valuations are computed exactly and are
   never 0 mod 17 (they land on {v, 2v} with v = 1 + 17k for solutions).

What remains (CM implies dihedral image in a split Cartan normalizer at
17 = 1 mod 4, excluded by cited theorems) is not computable here and is
recorded as an explicit assumption in the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

import sympy

from .errors import (
    CalibrationError,
    InvalidInputError,
    MissingCoefficientError,
)
from .frey import build_curve, discriminant
from .gaussian import prime_above, valuation
from .newforms import NewformRecord
from .primes import is_prime, prime_divisors, primes_up_to

__all__ = [
    "CongruenceCertificate",
    "sturm_bound",
    "verify_congruence",
    "zero_trace_pattern",
    "valuation_residue",
    "build_endgame_payload",
    "CITED_THEOREMS",
]

CITED_THEOREMS = (
    "modularity of the Frey Q-curve: its restriction of scalars is attached "
    "to weight-2 newforms",
    "level lowering for the mod-p representation (level 32q, p > 13)",
    "Sturm's theorem: coefficient agreement up to the bound proves the "
    "congruence of the two forms",
    "a congruence with a CM form gives dihedral image; at 17 = 1 (mod 4) the "
    "image lies in the normalizer of a split Cartan subgroup, which theorems "
    "of Momose and Ellenberg exclude for this family",
)

_EMBED_ENUM_LIMIT = 2_000_000


# ----- small GF(ell)[x] helpers (dense ascending coefficient lists) -----


def _gf_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mod(a: list[int], g: list[int], ell: int) -> tuple[int, ...]:
    """a mod g in GF(ell)[x]; g monic.  Returns exactly deg(g) coefficients."""
    a = [c % ell for c in a]
    dg = len(g) - 1
    for i in range(len(a) - 1, dg - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(dg):
                a[i - dg + j] = (a[i - dg + j] - c * g[j]) % ell
    out = a[:dg] + [0] * (dg - len(a))
    return tuple(out[:dg])


def _gf_mulmod(a, b, g: list[int], ell: int) -> tuple[int, ...]:
    dg = len(g) - 1
    prod = [0] * (2 * dg - 1 if dg > 1 else 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    prod[i + j] = (prod[i + j] + ca * cb) % ell
    return _gf_mod(prod, g, ell)


def factor_field_poly_mod(poly, ell: int) -> list[tuple[int, ...]]:
    """Distinct monic irreducible factors of a monic integer polynomial mod
    ell, each as an ascending coefficient tuple in [0, ell), sorted
    canonically (degree, then coefficients)."""
    x = sympy.symbols("x")
    sp = sympy.Poly(list(reversed(poly.coeffs)), x, domain=sympy.GF(ell))
    if sp.degree() < 1:
        raise InvalidInputError(f"field polynomial collapses mod {ell}")
    factors = []
    for fac, _mult in sp.factor_list()[1]:
        coeffs = [int(c) % ell for c in reversed(fac.all_coeffs())]
        factors.append(tuple(coeffs))
    return sorted(set(factors), key=lambda f: (len(f), f))


def _reduce_coords(elem, ell: int, g: tuple[int, ...]) -> tuple[int, ...]:
    """Image of a number-field element in GF(ell)[x]/(g), g a monic factor of
    its field polynomial mod ell.  Denominators must be prime to ell."""
    ints = []
    for c in elem.coords:
        if c.denominator % ell == 0:
            raise CalibrationError(
                f"coordinate denominator divisible by {ell}; the power basis "
                f"cannot see the primes above {ell}"
            )
        ints.append(c.numerator * pow(c.denominator, -1, ell) % ell)
    return _gf_mod(ints, list(g), ell)


def _scalar(residue: tuple[int, ...]) -> int | None:
    """The residue as an element of the prime field, or None if not scalar."""
    if any(residue[1:]):
        return None
    return residue[0] if residue else 0


def _embeddings(ga: tuple[int, ...], gb: tuple[int, ...], ell: int):
    """Ring embeddings GF(ell)[x]/(ga) -> GF(ell)[y]/(gb), as the images of
    x (roots of ga in the target field).  Empty when none exist."""
    da, db = len(ga) - 1, len(gb) - 1
    if db % da != 0:
        return []
    if da == 1:
        return [((-ga[0]) % ell,) + (0,) * (db - 1)]
    if ell**db > _EMBED_ENUM_LIMIT:
        raise InvalidInputError(
            f"residue field GF({ell}^{db}) too large for embedding search"
        )
    roots = []
    gb_list = list(gb)
    # enumerate the target field, evaluating ga by Horner
    for tup in product(range(ell), repeat=db):
        z = tuple(tup)
        acc: tuple[int, ...] = (ga[-1] % ell,) + (0,) * (db - 1)
        for c in reversed(ga[:-1]):
            acc = _gf_mulmod(acc, z, gb_list, ell)
            acc = ((acc[0] + c) % ell,) + acc[1:]
        if not any(acc):
            roots.append(z)
    return roots


def _apply_embedding(residue: tuple[int, ...], root, gb: tuple[int, ...], ell: int):
    """Value of the polynomial `residue` at `root` inside GF(ell)[y]/(gb)."""
    db = len(gb) - 1
    acc: tuple[int, ...] = (0,) * max(db, 1)
    for c in reversed(residue):
        acc = _gf_mulmod(acc, root, list(gb), ell)
        acc = ((acc[0] + c) % ell,) + tuple(acc[1:])
    return acc


# ----- Sturm bound -----


def sturm_bound(N: int, k: int) -> int:
    """(k/12) * [SL2(Z) : Gamma0(N)] = (k/12) * N * prod_{p | N} (1 + 1/p),
    exact; raises if the formula is not an integer for these arguments."""
    if N < 1 or k < 2 or k % 2 != 0:
        raise InvalidInputError("need N >= 1 and even k >= 2")
    fr = prime_divisors(N) if N > 1 else None
    index = Fraction(N)
    if fr is not None:
        assert fr.complete
        for p in fr.primes:
            index *= Fraction(p + 1, p)
    bound = Fraction(k, 12) * index
    if bound.denominator != 1:
        raise InvalidInputError(
            f"Sturm bound (k/12) * index = {bound} is not an integer for N={N}, k={k}"
        )
    return int(bound)


# ----- congruence verification -----


@dataclass(frozen=True, slots=True)
class CongruenceCertificate:
    form_a: str
    form_b: str
    modulus: int
    prime_above: dict  # factor data for the successful (or first tried) pair
    bound: int
    indices_checked: int
    indices_description: str
    verdict: str  # "holds" | "fails"
    first_failure: int | None = None

    def to_json(self) -> dict:
        return {
            "form_a": self.form_a,
            "form_b": self.form_b,
            "modulus": self.modulus,
            "prime_above": self.prime_above,
            "bound": self.bound,
            "indices_checked": self.indices_checked,
            "indices_description": self.indices_description,
            "verdict": self.verdict,
            "first_failure": self.first_failure,
        }


def _congruence_indices(bound: int, level_lcm: int) -> list[int]:
    return [n for n in range(1, bound + 1) if gcd(n, level_lcm) == 1]


def verify_congruence(
    a: NewformRecord, b: NewformRecord, ell: int
) -> CongruenceCertificate:
    """Check a_n = b_n (mod a prime above ell) for all n up to the Sturm
    bound of the lcm level that are coprime to that level.

    Every pair of primes above ell (irreducible factors of the two field
    polynomials mod ell) and every embedding into a common residue field is
    tried; the certificate records the successful pair, or the first failing
    index when none works.
    """
    if not is_prime(ell):
        raise InvalidInputError(f"modulus {ell} is not prime")
    level_lcm = lcm(a.level, b.level)
    bound = sturm_bound(level_lcm, 2)
    for rec in (a, b):
        if rec.num_an < bound:
            raise MissingCoefficientError(
                f"form {rec.label}: have {rec.num_an} coefficients, "
                f"the congruence check needs all n <= {bound}"
            )
    indices = _congruence_indices(bound, level_lcm)
    desc = f"all n <= {bound} with gcd(n, {level_lcm}) = 1"
    factors_a = factor_field_poly_mod(a.field_poly, ell)
    factors_b = factor_field_poly_mod(b.field_poly, ell)
    residues_a = {
        ga: {n: _reduce_coords(a.a(n), ell, ga) for n in indices} for ga in factors_a
    }
    residues_b = {
        gb: {n: _reduce_coords(b.a(n), ell, gb) for n in indices} for gb in factors_b
    }
    first_fail: int | None = None
    first_pair: dict | None = None
    for ga in factors_a:
        res_a = residues_a[ga]
        for gb in factors_b:
            res_b = residues_b[gb]
            # orient so we embed the smaller residue field into the larger
            if len(ga) <= len(gb):
                small, big = (res_a, ga), (res_b, gb)
                swap = False
            else:
                small, big = (res_b, gb), (res_a, ga)
                swap = True
            try:
                roots = _embeddings(small[1], big[1], ell)
            except InvalidInputError:
                roots = []
            for root in roots:
                fail = None
                for n in indices:
                    lhs = _apply_embedding(small[0][n], root, big[1], ell)
                    rhs = big[0][n]
                    if tuple(lhs) != tuple(rhs):
                        fail = n
                        break
                pair = {
                    "form_a_factor": list(ga),
                    "form_b_factor": list(gb),
                    "embedding_root": list(root),
                    "note": "factors of the field polynomials mod "
                    f"{ell}; coefficients ascending"
                    + ("; comparison embedded b-side into a-side" if swap else ""),
                }
                if fail is None:
                    return CongruenceCertificate(
                        a.label, b.label, ell, pair, bound, len(indices), desc, "holds"
                    )
                if first_fail is None:
                    first_fail, first_pair = fail, pair
    if first_pair is None:
        first_pair = {
            "form_a_factor": list(factors_a[0]),
            "form_b_factor": list(factors_b[0]),
            "embedding_root": None,
            "note": f"no common residue field above {ell} admits an embedding",
        }
    return CongruenceCertificate(
        a.label, b.label, ell, first_pair, bound, len(indices), desc,
        "fails", first_fail,
    )


def zero_trace_pattern(form: NewformRecord, ell: int, bound: int) -> bool:
    """Whether b_t = 0 (mod some fixed prime above ell) simultaneously for
    every prime t = 3 (mod 4), t <= bound, t coprime to the level."""
    if not is_prime(ell):
        raise InvalidInputError(f"modulus {ell} is not prime")
    ts = [t for t in primes_up_to(bound) if t % 4 == 3 and gcd(t, form.level) == 1]
    if ts and ts[-1] > form.num_an:
        raise MissingCoefficientError(
            f"form {form.label}: zero-trace scan needs a_t up to {ts[-1]}, "
            f"have {form.num_an}"
        )
    for g in factor_field_poly_mod(form.field_poly, ell):
        if all(not any(_reduce_coords(form.a(t), ell, g)) for t in ts):
            return True
    return False


# ----- discriminant valuation argument -----


def valuation_residue(A: int, B: int, q: int, p: int) -> tuple[int, int]:
    """(v_pi(Delta) mod p, v_pibar(Delta) mod p) for the Frey curve of
    (A, B) at the two Gaussian primes over q.

    With v = v_q(A^4 + B^4) the two valuations are {v, 2v} in some order
    (the two odd discriminant factors are coprime at q); for genuine
    solutions v = 1 + p k, putting the residues in {1, 2}.  The structural
    identity is asserted; the residues are returned as computed.
    """
    if gcd(A, B) != 1 or A % 2 != 0:
        raise InvalidInputError("need gcd(A, B) = 1 with A even")
    if not is_prime(q) or q % 8 != 1:
        raise InvalidInputError(f"q must be a prime = 1 (mod 8), got {q}")
    n = A**4 + B**4
    if n == 0 or n % q != 0:
        raise InvalidInputError(f"q = {q} does not divide A^4 + B^4 = {n}")
    v = 0
    m = n
    while m % q == 0:
        m //= q
        v += 1
    pi = prime_above(q)
    delta = discriminant(build_curve(A, B))
    vpi = valuation(delta, pi)
    vbar = valuation(delta, pi.conj())
    if {vpi, vbar} != {v, 2 * v}:
        raise CalibrationError(
            f"discriminant valuations {{{vpi}, {vbar}}} do not match the "
            f"expected {{v, 2v}} = {{{v}, {2 * v}}} at q = {q}"
        )
    return (vpi % p, vbar % p)


def _valuation_spot_checks(q: int, p: int, *, count: int = 3) -> list[dict]:
    """Small witness pairs (A, B) with q | A^4 + B^4, and their residues."""
    out = []
    for A in range(2, 200, 2):
        for B in range(1, 200):
            if gcd(A, B) != 1 or (A**4 + B**4) % q != 0:
                continue
            r1, r2 = valuation_residue(A, B, q, p)
            n = A**4 + B**4
            v = 0
            while n % q == 0:
                n //= q
                v += 1
            out.append({"A": A, "B": B, "q": q, "p": p, "v_q": v, "residues": [r1, r2]})
            if len(out) >= count:
                return out
    return out


def build_endgame_payload(
    survivor: NewformRecord, cm_form: NewformRecord, q: int, p: int
) -> tuple[dict, bool]:
    """The certificate appended to a sieve report under "endgame", plus
    whether every computable check passed."""
    cert = verify_congruence(survivor, cm_form, p)
    bound = cert.bound
    zero = zero_trace_pattern(survivor, p, bound)
    spot = _valuation_spot_checks(q, p)
    statement = (
        f"a mod-{p} congruence with the level-{cm_form.level} form would let "
        f"the representation of a solution curve arise at level "
        f"{cm_form.level}, with q = {q} removed from the level; removal "
        f"requires the discriminant valuation at each Gaussian prime over q "
        f"to be 0 mod {p}, but for solutions the valuations are v and 2v "
        f"with v = 1 (mod {p}), so the residues land in {{1, 2}} and never 0"
    )
    payload = {
        "congruence": cert.to_json(),
        "zero_pattern": zero,
        "valuation_argument": {"statement": statement, "spot_checks": spot},
        "cited_theorems": list(CITED_THEOREMS),
    }
    passed = cert.verdict == "holds" and zero
    return payload, passed
