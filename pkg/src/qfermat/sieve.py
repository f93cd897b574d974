"""The congruence elimination sieve.

For a putative solution of x^4 + y^4 = q z^p (q interesting, p > 13), the
mod-p representation attached to the Frey curve matches some weight-2 newform
g of level 32q: at every prime t = 3 (mod 4) not dividing 2q the congruence

    a_t = b_t  (mod P),   P | p,

must hold, where a_t = c sqrt(2) with |c| <= sqrt(2t) (inner twist + Hasse)
and b_t is g's eigenvalue.  The primes P for which the congruence is solvable
for some admissible c are exactly the primes dividing one of the resultants

    Res(x^2 - 2c^2, charpoly(b_t))      (c != 0)
    Res(x,          charpoly(b_t))      (c = 0),

so each (form, t) yields a finite prime set (or all primes, when b_t itself
is of the c sqrt(2) shape and a resultant vanishes).  Intersecting over
several t and keeping p > 13 leaves the exponents the method cannot kill;
an empty global set proves the theorem for that q.

Factoring a resultant can fail within budget; the resulting prime sets then
carry a conservative "every prime above the trial bound" tail.  The
intersection step sharpens such tails away by exact divisibility tests
(p survives at t iff p = t or p divides a recorded resultant), which never
drops a genuine survivor.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt

from .classifier import classify
from .errors import InvalidInputError, MethodInapplicableError
from .newforms import NewformRecord, eigenvalue_char_poly
from .polynomials import IntPolynomial, resultant
from .primes import TRIAL_DIVISION_LIMIT, PrimeSet, is_prime, prime_divisors

__all__ = [
    "TraceCandidates",
    "EliminationReport",
    "SieveOutcome",
    "allowed_trace_scalars",
    "candidate_poly",
    "survivors_at",
    "sieve_form",
    "sieve_level",
    "ASSUMPTIONS",
]

ASSUMPTIONS = (
    "modularity: the restriction of scalars of the Frey curve corresponds to "
    "a weight-2 newform (conductor 2-part taken as 32)",
    "level lowering: for p > 13 the mod-p representation of a primitive "
    "solution arises from a newform of level 32q",
    "irreducibility of the mod-p representation for p > 13 "
    "(hypothesis of level lowering; reason for the p_min cutoff)",
    "inner twist: at t = 3 (mod 4) the solution form's eigenvalue is "
    "c*sqrt(2) with an integer |c| <= sqrt(2t)",
)


@dataclass(frozen=True, slots=True)
class TraceCandidates:
    """Admissible a_t = c sqrt(2) scalars at an inert prime t."""

    t: int
    scalars: tuple[int, ...]

    def __post_init__(self) -> None:
        assert all(2 * c * c <= 4 * self.t for c in self.scalars)


@dataclass(frozen=True, slots=True)
class EliminationReport:
    """Sieve result for one newform."""

    label: str
    dimension: int
    per_t: dict[int, PrimeSet]
    survivors: PrimeSet
    outside_hypotheses: tuple[int, ...]  # survivors with p < p_min
    audit: tuple[dict, ...]

    def __post_init__(self) -> None:
        for t, ps in self.per_t.items():
            for p in self.survivors.finite:
                assert p in ps, f"survivor {p} missing from per_t[{t}]"


@dataclass(frozen=True, slots=True)
class SieveOutcome:
    q: int
    tset: tuple[int, ...]
    reports: tuple[EliminationReport, ...]
    global_survivors: tuple[tuple[str, int], ...]
    unresolved: tuple[str, ...]  # forms whose survivor set stayed infinite
    proved: bool

    def __post_init__(self) -> None:
        assert self.proved == (not self.global_survivors and not self.unresolved)


def allowed_trace_scalars(t: int) -> TraceCandidates:
    """All integers c with 2c^2 within the Hasse bound 4t, i.e.
    |c| <= floor(sqrt(2t))."""
    if not is_prime(t) or t % 4 != 3:
        raise InvalidInputError(f"t must be a prime = 3 (mod 4), got {t}")
    cmax = isqrt(2 * t)
    return TraceCandidates(t, tuple(range(-cmax, cmax + 1)))


def candidate_poly(c: int) -> IntPolynomial:
    """Characteristic polynomial of c sqrt(2): x for c = 0, else x^2 - 2c^2."""
    if c == 0:
        return IntPolynomial.make((0, 1))
    return IntPolynomial.make((-2 * c * c, 0, 1))


def _survivors_at_detail(
    form: NewformRecord, t: int, *, rho_budget: int = 4_000_000
) -> tuple[PrimeSet, list[dict]]:
    if not is_prime(t) or t % 4 != 3:
        raise InvalidInputError(f"t must be a prime = 3 (mod 4), got {t}")
    if (2 * form.level) % t == 0:
        raise InvalidInputError(f"t = {t} divides 2 * level = {2 * form.level}")
    h = eigenvalue_char_poly(form, t)
    cands = allowed_trace_scalars(t)
    survivors = PrimeSet.of((t,))
    audit: list[dict] = []
    for c in range(0, max(cands.scalars) + 1):  # poly_c depends only on |c|
        r = resultant(candidate_poly(c), h)
        entry: dict = {"t": t, "c": c, "resultant": r}
        if r == 0:
            survivors = survivors.union(PrimeSet.all_primes())
            entry["primes"] = "ALL"
        else:
            fr = prime_divisors(r, rho_budget=rho_budget)
            tail = None if fr.complete else TRIAL_DIVISION_LIMIT
            survivors = survivors.union(PrimeSet.of(fr.primes, tail))
            entry["primes"] = list(fr.primes)
            if not fr.complete:
                entry["unfactored_cofactor"] = fr.cofactor
        audit.append(entry)
    return survivors, audit


def survivors_at(form: NewformRecord, t: int, *, rho_budget: int = 4_000_000) -> PrimeSet:
    """Exponents p for which the mod-P congruence at t is solvable: {t} plus
    every prime dividing some admissible resultant (all primes when some
    resultant vanishes)."""
    return _survivors_at_detail(form, t, rho_budget=rho_budget)[0]


def _refined_intersection(
    per_t: dict[int, PrimeSet], audit: tuple[dict, ...]
) -> PrimeSet:
    """Intersection of the per-t survivor sets, with infinite tails resolved
    by exact divisibility against the recorded resultants.

    A prime p survives at t iff p = t, or some resultant at t is zero, or
    p divides some resultant at t.  For p in any finite part this is decided
    exactly; a tail survives only if every t has a tail.
    """
    tails = [ps.tail for ps in per_t.values()]
    tail = max(tails) if all(tl is not None for tl in tails) else None
    res_by_t: dict[int, list[int]] = {t: [] for t in per_t}
    for entry in audit:
        res_by_t[entry["t"]].append(entry["resultant"])
    candidates = sorted({p for ps in per_t.values() for p in ps.finite})
    keep = []
    for p in candidates:
        ok = True
        for t, rs in res_by_t.items():
            if p == t or any(r == 0 or r % p == 0 for r in rs):
                continue
            ok = False
            break
        if ok:
            keep.append(p)
    return PrimeSet.of(keep, tail)


def sieve_form(
    form: NewformRecord,
    tset: tuple[int, ...],
    *,
    p_min: int = 14,
    rho_budget: int = 4_000_000,
) -> EliminationReport:
    """Run the congruence sieve for one form over all t in tset."""
    if not tset:
        raise InvalidInputError("tset must be nonempty")
    per_t: dict[int, PrimeSet] = {}
    audit: list[dict] = []
    for t in sorted(set(tset)):
        ps, entries = _survivors_at_detail(form, t, rho_budget=rho_budget)
        per_t[t] = ps
        audit.extend(entries)
    refined = _refined_intersection(per_t, tuple(audit))
    if all(ps.is_finite for ps in per_t.values()):
        # dual route: with no tails the generic lattice meet must agree
        generic = None
        for ps in per_t.values():
            generic = ps if generic is None else generic.intersect(ps)
        assert generic == refined, "refined intersection diverged from set meet"
    survivors = refined.restrict_greater(p_min - 1)
    outside = tuple(refined.restrict_at_most(p_min - 1).finite)
    return EliminationReport(
        form.label, form.dimension, per_t, survivors, outside, tuple(audit)
    )


def method_inapplicable_reason(q: int) -> str | None:
    """Explanation when the sieve must refuse q, else None."""
    cls = classify(q)
    if cls.is_interesting:
        return None
    if cls.verdict == "NotOneMod8":
        return (
            f"q = {q} is not 1 (mod 8): u^4 = -1 (mod q) has no solution, so "
            "x^4 + y^4 = q z^p has no primitive solutions for any p by the "
            "local argument alone; the modular sieve is unnecessary"
        )
    if cls.verdict == "BiquadrateSum":
        a, b = cls.witness  # type: ignore[misc]
        return (
            f"q = {q} = {a}^4 + {b}^4, so ({a}, {b}, 1) is a solution for "
            "every exponent p; non-existence is false and there is nothing "
            "to prove"
        )
    a, b = cls.witness  # type: ignore[misc]
    return (
        f"q = {q} = (2*{a})^4 + {b}^2: for such q the comparison space of "
        "level 32q contains a form whose eigenvalues genuinely take the "
        "c*sqrt(2) shape at every t = 3 (mod 4), so the congruence sieve "
        "eliminates nothing"
    )


def sieve_level(
    q: int,
    records: list[NewformRecord],
    tset: tuple[int, ...] = (3, 7, 11, 19),
    *,
    p_min: int = 14,
    rho_budget: int = 4_000_000,
    workers: int = 1,
) -> SieveOutcome:
    """Sieve every newform of level 32q (supplied as `records`) and
    aggregate.  proved = no (form, p) pair with p >= p_min survives."""
    reason = method_inapplicable_reason(q)
    if reason is not None:
        raise MethodInapplicableError(reason)
    for t in tset:
        if not is_prime(t) or t % 4 != 3:
            raise InvalidInputError(f"t = {t} is not a prime = 3 (mod 4)")
        if (2 * q) % t == 0:
            raise InvalidInputError(f"t = {t} divides 2q")
    level = 32 * q
    for rec in records:
        if rec.level != level:
            raise InvalidInputError(
                f"record {rec.label} has level {rec.level}, expected {level}"
            )
    ordered = sorted(records, key=lambda r: r.label)
    tset_c = tuple(sorted(set(tset)))

    def run(rec: NewformRecord) -> EliminationReport:
        return sieve_form(rec, tset_c, p_min=p_min, rho_budget=rho_budget)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = tuple(pool.map(run, ordered))
    else:
        reports = tuple(run(rec) for rec in ordered)
    global_survivors = tuple(
        sorted(
            (rep.label, p)
            for rep in reports
            if rep.survivors.is_finite
            for p in rep.survivors.finite
        )
    )
    unresolved = tuple(
        sorted(rep.label for rep in reports if not rep.survivors.is_finite)
    )
    proved = not global_survivors and not unresolved
    return SieveOutcome(q, tset_c, reports, global_survivors, unresolved, proved)


def outcome_to_report(outcome: SieveOutcome, *, p_min: int = 14) -> dict:
    """Render a SieveOutcome as the report contract dict (key order fixed)."""
    forms = []
    for rep in outcome.reports:
        forms.append(
            {
                "label": rep.label,
                "per_t": {str(t): rep.per_t[t].to_json() for t in outcome.tset},
                "survivors": rep.survivors.to_json(),
                "resultant_audit": list(rep.audit),
                "dimension": rep.dimension,
                "survivors_outside_hypotheses": list(rep.outside_hypotheses),
            }
        )
    return {
        "q": outcome.q,
        "tset": list(outcome.tset),
        "p_min": p_min,
        "forms": forms,
        "global_survivors": [
            {"label": label, "p": p} for label, p in outcome.global_survivors
        ],
        "proved": outcome.proved,
        "assumptions": list(ASSUMPTIONS),
    }
