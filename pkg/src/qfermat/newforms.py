"""Storage and validation of weight-2 newform eigenvalue data.

A `NewformRecord` is one Galois orbit of newforms on Gamma0(N): the monic
defining polynomial of its Hecke field and the eigenvalues a_n as exact
rational coordinate vectors in the power basis.  Records arrive from three
places, in lookup order: the user cache, the repository-bundled snapshot
(levels the proofs need), and the remote database client.  All three funnel
through the same canonical JSON format and the same invariant checks, so a
tampered or truncated file fails loudly instead of producing a wrong proof.

Cache format (one document per level, keys exactly in this order):

    {"level": int, "weight": 2, "forms": [
        {"label": str, "dimension": int, "field_poly": [int, ...],
         "an": [[[num, den], ...] per n from 1], "cm_discriminant": int|null}
    ]}

Serialization is canonical (compact separators, ASCII), so parse + render is
a byte-exact round trip; reports hash these bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .errors import (
    DataUnavailableError,
    InvariantViolationError,
    MissingCoefficientError,
    ParseError,
    TamperedDataError,
)
from .numberfield import NumberFieldElement, element_char_poly
from .polynomials import IntPolynomial, count_real_roots_greater, root_squares_poly

__all__ = [
    "NewformRecord",
    "eigenvalue_char_poly",
    "satisfies_hasse",
    "parse_level_bytes",
    "render_level_bytes",
    "load_cached",
    "fetch_level",
    "bundled_levels",
]

_WEIGHT = 2


@dataclass(frozen=True, slots=True)
class NewformRecord:
    level: int
    label: str
    dimension: int
    field_poly: IntPolynomial
    an: tuple[NumberFieldElement, ...]  # an[k] is a_{k+1}
    cm_discriminant: int | None
    source: str = "bundled"  # "bundled" | "remote"

    @property
    def num_an(self) -> int:
        return len(self.an)

    def a(self, n: int) -> NumberFieldElement:
        """a_n, 1-indexed."""
        if n < 1 or n > len(self.an):
            raise MissingCoefficientError(
                f"form {self.label}: a_{n} not stored (have n <= {len(self.an)})"
            )
        return self.an[n - 1]

    def __str__(self) -> str:
        return f"{self.label} (level {self.level}, dim {self.dimension})"


def eigenvalue_char_poly(form: NewformRecord, n: int) -> IntPolynomial:
    """Characteristic polynomial of a_n over Q (degree = Hecke field degree);
    its roots are the Galois conjugates of the eigenvalue."""
    return element_char_poly(form.a(n))


def satisfies_hasse(charpoly: IntPolynomial, t: int) -> bool:
    """Whether every real root of `charpoly` lies in [-2 sqrt(t), 2 sqrt(t)].

    Exact: the polynomial whose roots are the squares of charpoly's roots
    must have no real root exceeding 4t (Sturm count on (4t, infinity))."""
    if not charpoly.is_monic:
        raise InvariantViolationError("Hasse check expects a monic char poly")
    return count_real_roots_greater(root_squares_poly(charpoly), 4 * t) == 0


def validate_record(rec: NewformRecord, *, hasse_ts: tuple[int, ...] = ()) -> None:
    """Structural invariants every record must satisfy.  Raises
    InvariantViolationError naming the form and the broken invariant."""
    who = f"form {rec.level}.{rec.label}"
    if rec.dimension != rec.field_poly.degree:
        raise InvariantViolationError(
            f"{who}: dimension {rec.dimension} != deg(field_poly) {rec.field_poly.degree}"
        )
    if not rec.field_poly.is_monic:
        raise InvariantViolationError(f"{who}: field_poly is not monic")
    if rec.num_an < 1:
        raise InvariantViolationError(f"{who}: no coefficients stored")
    for k, a in enumerate(rec.an):
        if a.field != rec.field_poly or len(a.coords) != rec.dimension:
            raise InvariantViolationError(f"{who}: a_{k + 1} has mismatched field/coords")
    one = NumberFieldElement.rational(rec.field_poly, 1)
    if rec.a(1) != one:
        raise InvariantViolationError(f"{who}: a_1 != 1")
    # multiplicativity spot checks at coprime index pairs
    for i, j in ((2, 3), (2, 5)):
        if rec.num_an >= i * j:
            if rec.a(i) * rec.a(j) != rec.a(i * j):
                raise InvariantViolationError(f"{who}: a_{i * j} != a_{i} * a_{j}")
    for t in hasse_ts:
        if rec.num_an >= t:
            if not satisfies_hasse(eigenvalue_char_poly(rec, t), t):
                raise InvariantViolationError(f"{who}: Hasse bound fails at t={t}")


# ----- canonical serialization -----


def _rec_to_obj(rec: NewformRecord) -> dict:
    return {
        "label": rec.label,
        "dimension": rec.dimension,
        "field_poly": list(rec.field_poly.coeffs),
        "an": [
            [[c.numerator, c.denominator] for c in a.coords] for a in rec.an
        ],
        "cm_discriminant": rec.cm_discriminant,
    }


def render_level_bytes(level: int, records: list[NewformRecord]) -> bytes:
    doc = {
        "level": level,
        "weight": _WEIGHT,
        "forms": [_rec_to_obj(r) for r in records],
    }
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=True).encode("utf-8")


def parse_level_bytes(data: bytes, *, source: str, expect_level: int | None = None) -> list[NewformRecord]:
    """Parse and validate one level document.  ParseError names the offending
    field; semantic breakage raises InvariantViolationError."""
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ParseError(f"level document is not valid JSON: {e}") from e
    for key in ("level", "weight", "forms"):
        if key not in doc:
            raise ParseError(f"level document missing key '{key}'")
    if not isinstance(doc["level"], int):
        raise ParseError("field 'level' must be an integer")
    if doc["weight"] != _WEIGHT:
        raise ParseError(f"field 'weight' must be {_WEIGHT}, got {doc['weight']!r}")
    if expect_level is not None and doc["level"] != expect_level:
        raise ParseError(f"field 'level' is {doc['level']}, expected {expect_level}")
    records = []
    for idx, obj in enumerate(doc["forms"]):
        records.append(_parse_form(obj, doc["level"], idx, source))
    for rec in records:
        validate_record(rec)
    labels = [r.label for r in records]
    if len(set(labels)) != len(labels):
        raise ParseError(f"duplicate labels in level {doc['level']}")
    return records


def _parse_form(obj: dict, level: int, idx: int, source: str) -> NewformRecord:
    where = f"forms[{idx}]"
    for key in ("label", "dimension", "field_poly", "an", "cm_discriminant"):
        if key not in obj:
            raise ParseError(f"{where} missing key '{key}'")
    label = obj["label"]
    if not isinstance(label, str) or not label:
        raise ParseError(f"{where}.label must be a nonempty string")
    dim = obj["dimension"]
    if not isinstance(dim, int) or dim < 1:
        raise ParseError(f"{where}.dimension must be a positive integer")
    fp = obj["field_poly"]
    if (
        not isinstance(fp, list)
        or not all(isinstance(c, int) for c in fp)
        or len(fp) != dim + 1
    ):
        raise ParseError(f"{where}.field_poly must be {dim + 1} integers")
    poly = IntPolynomial.make(fp)
    if poly.degree != dim:
        raise ParseError(f"{where}.field_poly has degree {poly.degree}, wanted {dim}")
    an_raw = obj["an"]
    if not isinstance(an_raw, list) or not an_raw:
        raise ParseError(f"{where}.an must be a nonempty list")
    an = []
    for n0, vec in enumerate(an_raw):
        if not isinstance(vec, list) or len(vec) != dim:
            raise ParseError(f"{where}.an[{n0}] must have {dim} coordinate pairs")
        coords = []
        for pair in vec:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, int) for v in pair)
                or pair[1] <= 0
            ):
                raise ParseError(f"{where}.an[{n0}] coordinate is not [num, den>0]")
            frac = Fraction(pair[0], pair[1])
            if (frac.numerator, frac.denominator) != tuple(pair):
                raise ParseError(f"{where}.an[{n0}] coordinate [{pair[0]},{pair[1]}] is not reduced")
            coords.append(frac)
        an.append(NumberFieldElement(poly, tuple(coords)))
    cm = obj["cm_discriminant"]
    if cm is not None and not isinstance(cm, int):
        raise ParseError(f"{where}.cm_discriminant must be an integer or null")
    return NewformRecord(level, label, dim, poly, tuple(an), cm, source)


# ----- bundled snapshot -----


def _data_root():
    return resources.files("qfermat").joinpath("data")


def bundled_levels() -> list[int]:
    root = _data_root()
    out = []
    for entry in root.iterdir():
        name = entry.name
        if name.startswith("level_") and name.endswith(".json"):
            out.append(int(name[len("level_") : -len(".json")]))
    return sorted(out)


def _load_bundled(level: int) -> list[NewformRecord] | None:
    root = _data_root()
    entry = root.joinpath(f"level_{level}.json")
    if not entry.is_file():
        return None
    data = entry.read_bytes()
    manifest = root.joinpath("MANIFEST.json")
    if manifest.is_file():
        digests = json.loads(manifest.read_text("utf-8"))
        want = digests.get(f"level_{level}.json")
        got = hashlib.sha256(data).hexdigest()
        if want is not None and want != got:
            raise TamperedDataError(
                f"bundled level_{level}.json sha256 {got} != manifest {want}"
            )
    records = parse_level_bytes(data, source="bundled", expect_level=level)
    if render_level_bytes(level, records) != data:
        raise TamperedDataError(
            f"bundled level_{level}.json is not in canonical form"
        )
    return records


# ----- cache + fetch orchestration -----


def _cache_file(cache_dir: Path, level: int) -> Path:
    return Path(cache_dir) / f"level_{level}.json"


def load_cached(level: int, cache_dir: Path) -> list[NewformRecord]:
    """Load a previously fetched level from the cache, re-validating every
    invariant.  Byte-exact: rendering the result reproduces the file."""
    path = _cache_file(cache_dir, level)
    if not path.is_file():
        raise DataUnavailableError(f"no cached data for level {level} at {path}")
    data = path.read_bytes()
    records = parse_level_bytes(data, source="remote", expect_level=level)
    if render_level_bytes(level, records) != data:
        raise TamperedDataError(f"cache file {path} is not in canonical form")
    return records


def store_cache(level: int, records: list[NewformRecord], cache_dir: Path) -> Path:
    from .reports import atomic_write_bytes

    path = _cache_file(cache_dir, level)
    path.parent.mkdir(parents=True, exist_ok=True)
    atomic_write_bytes(path, render_level_bytes(level, records))
    return path


def fetch_level(
    level: int,
    *,
    cache_dir: Path,
    offline: bool = True,
    min_an: int = 600,
    client=None,
) -> list[NewformRecord]:
    """All weight-2 trivial-character newforms of the level, with at least
    `min_an` coefficients each.

    Lookup order: user cache, bundled snapshot, then (unless offline) the
    remote client.  Remote results are validated and persisted to the cache;
    bundled data is served as-is without seeding the cache.
    """
    if level < 1:
        raise ParseError(f"level must be >= 1, got {level}")
    try:
        records = load_cached(level, cache_dir)
    except DataUnavailableError:
        records = None
    if records is None:
        records = _load_bundled(level)
    if records is None:
        if offline or client is None:
            raise DataUnavailableError(
                f"level {level} is not cached or bundled and offline mode is active"
                if offline
                else f"level {level} is not cached or bundled and no client was supplied"
            )
        records = client.fetch_level(level, min_an=min_an)
        for rec in records:
            validate_record(rec, hasse_ts=(3, 7, 11, 19))
        store_cache(level, records, cache_dir)
    for rec in records:
        if rec.num_an < min_an:
            raise MissingCoefficientError(
                f"form {rec.label}: only {rec.num_an} coefficients, need {min_an}"
            )
    return records
