from fractions import Fraction

import pytest

from qfermat.newforms import NewformRecord
from qfermat.numberfield import NumberFieldElement
from qfermat.polynomials import IntPolynomial


def make_form(
    level: int,
    label: str,
    field_coeffs: list[int],
    ap: dict[int, list],
    *,
    num_an: int = 24,
    cm: int | None = None,
) -> NewformRecord:
    """Synthetic record: a_p prescribed at primes, everything else built from
    the multiplicative recursions so invariant checks pass."""
    field = IntPolynomial.make(field_coeffs)
    dim = field.degree

    def elem(vals) -> NumberFieldElement:
        coords = [Fraction(v) for v in vals] + [Fraction(0)] * (dim - len(vals))
        return NumberFieldElement(field, tuple(coords))

    one = NumberFieldElement.rational(field, 1)
    table = {1: one}
    primes = [n for n in range(2, num_an + 1) if all(n % d for d in range(2, n))]
    for p in primes:
        a = elem(ap.get(p, [0]))  # unspecified primes default to a_p = 0
        prev, cur, power = one, a, p
        while power <= num_an:
            table[power] = cur
            nxt = cur * a if level % p == 0 else a * cur - prev.scale(p)
            prev, cur, power = cur, nxt, power * p
    an = []
    for n in range(1, num_an + 1):
        acc = one
        m, f = n, 2
        while f * f <= m:
            if m % f == 0:
                e = 0
                while m % f == 0:
                    m //= f
                    e += 1
                acc = acc * table[f**e]
            f += 1
        if m > 1:
            acc = acc * table[m]
        an.append(acc)
    return NewformRecord(
        level=level,
        label=label,
        dimension=dim,
        field_poly=field,
        an=tuple(an),
        cm_discriminant=cm,
        source="bundled",
    )


@pytest.fixture
def cache_dir(tmp_path):
    d = tmp_path / "cache"
    d.mkdir()
    return d
