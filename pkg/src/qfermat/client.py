"""HTTP client for a newform database.

Wire contract (JSON over HTTPS, one request per level):

    GET {base}/api/newforms?level=N&weight=2

    {"level": N, "weight": 2, "newforms": [
        {"label": str,
         "dimension": d,
         "field_poly": [d+1 ints, ascending, monic],
         "cm_discriminant": int | null,
         "basis_matrix": [[ [num, den] x d ] x d] | null,
         "an": [[ [num, den] x d ] per n from 1]}, ...]}

`an` coordinates are given against the row vectors of `basis_matrix`
(each row = one basis vector expressed in the power basis of field_poly);
null means the power basis itself.  Ingestion converts everything to the
power basis with exact rational arithmetic, so downstream code never sees
the source's basis choice.  Raw responses are archived next to the cache
for audit.  Requests are rate limited; any network or decoding problem
raises instead of degrading.
"""

from __future__ import annotations

import json
import time
import urllib.error
import urllib.request
from fractions import Fraction
from pathlib import Path

from .errors import DataUnavailableError, ParseError
from .newforms import NewformRecord
from .numberfield import NumberFieldElement
from .polynomials import IntPolynomial
from .reports import atomic_write_bytes

__all__ = ["NewformClient"]


def _parse_pair(v, where: str) -> Fraction:
    if (
        not isinstance(v, list)
        or len(v) != 2
        or not all(isinstance(x, int) for x in v)
        or v[1] == 0
    ):
        raise ParseError(f"{where}: expected [num, den], got {v!r}")
    return Fraction(v[0], v[1])


class NewformClient:
    def __init__(
        self,
        base_url: str,
        *,
        archive_dir: Path | None = None,
        delay: float = 0.5,
        timeout: float = 30.0,
    ) -> None:
        self.base_url = base_url.rstrip("/")
        self.archive_dir = Path(archive_dir) if archive_dir else None
        self.delay = delay
        self.timeout = timeout
        self._last_request = 0.0

    def _get(self, url: str) -> bytes:
        wait = self.delay - (time.monotonic() - self._last_request)
        if wait > 0:
            time.sleep(wait)
        self._last_request = time.monotonic()
        try:
            with urllib.request.urlopen(url, timeout=self.timeout) as resp:
                if resp.status != 200:
                    raise DataUnavailableError(f"GET {url} -> HTTP {resp.status}")
                return resp.read()
        except urllib.error.URLError as e:
            raise DataUnavailableError(f"GET {url} failed: {e}") from e

    def fetch_level(self, level: int, *, min_an: int = 600) -> list[NewformRecord]:
        url = f"{self.base_url}/api/newforms?level={level}&weight=2"
        raw = self._get(url)
        if self.archive_dir is not None:
            atomic_write_bytes(
                self.archive_dir / f"level_{level}_response.json", raw
            )
        try:
            doc = json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise ParseError(f"response for level {level} is not JSON: {e}") from e
        if not isinstance(doc, dict) or doc.get("level") != level:
            raise ParseError(f"response 'level' must be {level}")
        if doc.get("weight") != 2:
            raise ParseError("response 'weight' must be 2")
        forms = doc.get("newforms")
        if not isinstance(forms, list):
            raise ParseError("response 'newforms' must be a list")
        return [self._parse_form(obj, level, i, min_an) for i, obj in enumerate(forms)]

    def _parse_form(self, obj, level: int, idx: int, min_an: int) -> NewformRecord:
        where = f"newforms[{idx}]"
        if not isinstance(obj, dict):
            raise ParseError(f"{where}: expected an object")
        label = obj.get("label")
        if not isinstance(label, str) or not label:
            raise ParseError(f"{where}.label missing or empty")
        dim = obj.get("dimension")
        if not isinstance(dim, int) or dim < 1:
            raise ParseError(f"{where}.dimension must be a positive integer")
        fp = obj.get("field_poly")
        if not isinstance(fp, list) or len(fp) != dim + 1:
            raise ParseError(f"{where}.field_poly must hold {dim + 1} integers")
        poly = IntPolynomial.make(fp)
        if not poly.is_monic:
            raise ParseError(f"{where}.field_poly must be monic")
        basis = obj.get("basis_matrix")
        rows: list[list[Fraction]] | None = None
        if basis is not None:
            if not isinstance(basis, list) or len(basis) != dim:
                raise ParseError(f"{where}.basis_matrix must have {dim} rows")
            rows = []
            for r, row in enumerate(basis):
                if not isinstance(row, list) or len(row) != dim:
                    raise ParseError(f"{where}.basis_matrix[{r}] must have {dim} entries")
                rows.append(
                    [_parse_pair(v, f"{where}.basis_matrix[{r}]") for v in row]
                )
        an_raw = obj.get("an")
        if not isinstance(an_raw, list) or len(an_raw) < min_an:
            raise ParseError(
                f"{where}.an must hold at least {min_an} coefficient vectors"
            )
        an = []
        for n0, vec in enumerate(an_raw):
            if not isinstance(vec, list) or len(vec) != dim:
                raise ParseError(f"{where}.an[{n0}] must have {dim} coordinates")
            coords = [_parse_pair(v, f"{where}.an[{n0}]") for v in vec]
            if rows is not None:
                # convert to the power basis: the element is sum_j c_j * row_j
                coords = [
                    sum((coords[j] * rows[j][i] for j in range(dim)), Fraction(0))
                    for i in range(dim)
                ]
            an.append(NumberFieldElement(poly, tuple(coords)))
        cm = obj.get("cm_discriminant")
        if cm is not None and not isinstance(cm, int):
            raise ParseError(f"{where}.cm_discriminant must be an integer or null")
        return NewformRecord(level, label, dim, poly, tuple(an), cm, source="remote")
