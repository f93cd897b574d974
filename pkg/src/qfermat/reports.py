"""Report serialization: canonical JSON, atomic writes, markdown rendering.

The JSON files are the verifiable artifacts, so their bytes must be a pure
function of their content: fixed key order (insertion order of the dicts
built here), compact separators, ASCII, trailing newline.  Writes go through
a temp file + rename so a crashed run never leaves a half-written report.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

__all__ = [
    "canonical_json_bytes",
    "atomic_write_bytes",
    "write_json_report",
    "sieve_report_path",
    "markdown_report",
]


def canonical_json_bytes(obj) -> bytes:
    return (json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n").encode("utf-8")


def atomic_write_bytes(path: Path, data: bytes) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_json_report(path: Path, obj) -> None:
    atomic_write_bytes(path, canonical_json_bytes(obj))


def sieve_report_path(report_dir: Path, q: int) -> Path:
    return Path(report_dir) / f"sieve_report_q{q}.json"


def _fmt_primes(v) -> str:
    if v == "ALL":
        return "all primes (unresolved)"
    return "{" + ", ".join(str(p) for p in v) + "}" if v else "none"


def markdown_report(report: dict) -> str:
    """Human rendering of a sieve report dict (same content as the JSON)."""
    q = report["q"]
    lines = [
        f"# Elimination report for x^4 + y^4 = {q} z^p",
        "",
        f"- sieve primes t: {report['tset']}",
        f"- exponents considered: p >= {report['p_min']}",
        f"- newforms of level {32 * q}: {len(report['forms'])}",
        f"- proved (no surviving exponent): **{report['proved']}**",
        "",
        "| form | dim | " + " | ".join(f"t={t}" for t in report["tset"]) + " | survivors |",
        "|---|---|" + "---|" * (len(report["tset"]) + 1),
    ]
    for f in report["forms"]:
        per_t = " | ".join(_fmt_primes(f["per_t"][str(t)]) for t in report["tset"])
        lines.append(
            f"| {f['label']} | {f['dimension']} | {per_t} | {_fmt_primes(f['survivors'])} |"
        )
    lines.append("")
    if report["global_survivors"]:
        lines.append("Surviving (form, p) pairs:")
        for s in report["global_survivors"]:
            lines.append(f"- form {s['label']}, p = {s['p']}")
    else:
        lines.append("No (form, p) pair survives the congruence sieve.")
    lines.append("")
    lines.append("Assumptions (cited results this elimination relies on):")
    for a in report["assumptions"]:
        lines.append(f"- {a}")
    if "endgame" in report:
        eg = report["endgame"]
        lines += [
            "",
            "## Endgame for the residual pair",
            "",
            f"- congruence verdict: {eg['congruence']['verdict']}"
            f" (mod {eg['congruence']['modulus']},"
            f" indices {eg['congruence']['indices_checked']})",
            f"- zero-trace pattern at t = 3 (mod 4): {eg['zero_pattern']}",
            f"- valuation argument: {eg['valuation_argument']['statement']}",
            "",
            "Cited theorems:",
        ]
        for c in eg["cited_theorems"]:
            lines.append(f"- {c}")
    lines.append("")
    return "\n".join(lines)
