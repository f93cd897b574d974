"""Command line interface.

Exit codes: 0 success/proved, 1 surviving cases remain, 2 bad arguments,
3 method not applicable to this prime, 4 required data unavailable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classifier import classify
from .config import RunConfig
from .endgame import build_endgame_payload
from .errors import (
    DataUnavailableError,
    InvalidInputError,
    MethodInapplicableError,
    MissingCoefficientError,
    QfermatError,
)
from .newforms import NewformRecord, fetch_level
from .reports import (
    canonical_json_bytes,
    markdown_report,
    sieve_report_path,
    write_json_report,
)
from .sieve import method_inapplicable_reason, outcome_to_report, sieve_level

__all__ = ["main", "build_parser"]


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tset", type=str, default=None,
                   help="comma separated auxiliary primes (default 3,7,11,19)")
    p.add_argument("--p-min", type=int, default=None,
                   help="smallest exponent not excluded a priori (default 14)")
    p.add_argument("--offline", action="store_true",
                   help="never touch the network; rely on bundled/cached data")
    p.add_argument("--cache-dir", type=str, default=None)
    p.add_argument("--report-dir", type=str, default=None)
    p.add_argument("--source-url", type=str, default=None)
    p.add_argument("--format", dest="fmt", choices=("json", "md"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfermat",
        description="Machine checks for x^4 + y^4 = q z^p via newform elimination.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a prime q")
    p.add_argument("q", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("fetch", help="fetch newform data for a level")
    p.add_argument("level", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_fetch)

    p = sub.add_parser("sieve", help="run the elimination sieve for a prime q")
    p.add_argument("q", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("endgame", help="resolve one surviving (form, p) pair")
    p.add_argument("q", type=int)
    p.add_argument("p", type=int)
    p.add_argument("label", type=str)
    _add_common(p)
    p.set_defaults(func=_cmd_endgame)

    p = sub.add_parser("prove", help="classify, sieve and finish the proof for q")
    p.add_argument("q", type=int)
    _add_common(p)
    p.set_defaults(func=_cmd_prove)

    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig.from_env()
    updates: dict = {}
    if args.tset is not None:
        try:
            updates["tset"] = tuple(int(t) for t in args.tset.split(","))
        except ValueError:
            raise InvalidInputError(f"--tset must be comma separated integers, got {args.tset!r}")
    if args.p_min is not None:
        updates["p_min"] = args.p_min
    if args.offline:
        updates["offline"] = True
    if args.cache_dir is not None:
        updates["cache_dir"] = Path(args.cache_dir)
    if args.report_dir is not None:
        updates["report_dir"] = Path(args.report_dir)
    if args.source_url is not None:
        updates["source_url"] = args.source_url
    if args.fmt is not None:
        updates["fmt"] = args.fmt
    return cfg.replace(**updates) if updates else cfg


def _make_client(cfg: RunConfig):
    from .client import NewformClient

    return NewformClient(cfg.source_url, archive_dir=cfg.cache_dir / "raw")


def _fetch(level: int, cfg: RunConfig) -> list[NewformRecord]:
    client = None if cfg.offline else _make_client(cfg)
    return fetch_level(
        level,
        cache_dir=cfg.cache_dir,
        offline=cfg.offline,
        min_an=cfg.min_an,
        client=client,
    )


def _cmd_classify(args: argparse.Namespace, cfg: RunConfig) -> int:
    print(classify(args.q))
    return 0


def _cmd_fetch(args: argparse.Namespace, cfg: RunConfig) -> int:
    records = _fetch(args.level, cfg)
    total = sum(r.dimension for r in records)
    source = records[0].source if records else "bundled"
    print(
        f"level {args.level}: {len(records)} newform orbits, "
        f"total dimension {total} ({source})"
    )
    for r in records:
        print(f"  {r.label}  dim {r.dimension}  an stored {len(r.an)}")
    return 0


def _run_sieve(q: int, cfg: RunConfig):
    reason = method_inapplicable_reason(q)
    if reason is not None:
        raise MethodInapplicableError(reason)
    records = _fetch(32 * q, cfg)
    return sieve_level(q, records, cfg.tset, p_min=cfg.p_min)


def _write_reports(report: dict, q: int, cfg: RunConfig) -> Path:
    path = sieve_report_path(cfg.reports, q)
    write_json_report(path, report)
    if cfg.fmt == "md":
        md = markdown_report(report)
        md_path = path.with_suffix(".md")
        md_path.parent.mkdir(parents=True, exist_ok=True)
        md_path.write_text(md, encoding="utf-8")
    return path


def _cmd_sieve(args: argparse.Namespace, cfg: RunConfig) -> int:
    outcome = _run_sieve(args.q, cfg)
    report = outcome_to_report(outcome)
    path = _write_reports(report, args.q, cfg)
    print(f"report written to {path}")
    if outcome.proved:
        print(f"q={args.q}: sieve eliminated every form for all p > {cfg.p_min - 1}")
        return 0
    for label, p in outcome.global_survivors:
        print(f"q={args.q}: survivor p={p} on form {label}")
    for label in outcome.unresolved:
        print(f"q={args.q}: form {label} not eliminated (unbounded exponent set)")
    return 1


def _load_report(path: Path) -> dict:
    if not path.exists():
        raise InvalidInputError(
            f"no sieve report at {path}; run the sieve first"
        )
    return json.loads(path.read_text(encoding="utf-8"))


def _endgame_records(q: int, label: str, cfg: RunConfig):
    records = _fetch(32 * q, cfg)
    by_label = {r.label: r for r in records}
    if label not in by_label:
        raise InvalidInputError(f"no newform {label!r} at level {32 * q}")
    cm_records = _fetch(32, cfg)
    if len(cm_records) != 1:
        raise DataUnavailableError(
            f"expected exactly one newform orbit at level 32, got {len(cm_records)}"
        )
    return by_label[label], cm_records[0]


def _cmd_endgame(args: argparse.Namespace, cfg: RunConfig) -> int:
    path = sieve_report_path(cfg.reports, args.q)
    report = _load_report(path)
    wanted = {"label": args.label, "p": args.p}
    if wanted not in report.get("global_survivors", []):
        raise InvalidInputError(
            f"(p={args.p}, form {args.label}) is not a survivor in {path}"
        )
    survivor, cm_form = _endgame_records(args.q, args.label, cfg)
    payload, passed = build_endgame_payload(survivor, cm_form, args.q, args.p)
    report["endgame"] = payload
    write_json_report(path, report)
    if cfg.fmt == "md":
        path.with_suffix(".md").write_text(markdown_report(report), encoding="utf-8")
    print(f"report updated at {path}")
    if passed:
        print(
            f"q={args.q}: survivor p={args.p} on {args.label} eliminated by "
            f"congruence and valuation argument"
        )
        return 0
    print(f"q={args.q}: endgame inconclusive for p={args.p} on {args.label}")
    return 1


def _cmd_prove(args: argparse.Namespace, cfg: RunConfig) -> int:
    outcome = _run_sieve(args.q, cfg)
    report = outcome_to_report(outcome)
    if outcome.proved:
        path = _write_reports(report, args.q, cfg)
        print(f"report written to {path}")
        print(f"q={args.q}: proved, sieve left no survivors")
        return 0
    if outcome.unresolved or len(outcome.global_survivors) != 1:
        path = _write_reports(report, args.q, cfg)
        print(f"report written to {path}")
        for label, p in outcome.global_survivors:
            print(f"q={args.q}: survivor p={p} on form {label}")
        for label in outcome.unresolved:
            print(f"q={args.q}: form {label} not eliminated")
        return 1
    (label, p), = outcome.global_survivors
    survivor, cm_form = _endgame_records(args.q, label, cfg)
    payload, passed = build_endgame_payload(survivor, cm_form, args.q, p)
    report["endgame"] = payload
    path = _write_reports(report, args.q, cfg)
    print(f"report written to {path}")
    if passed:
        print(
            f"q={args.q}: proved, survivor p={p} on {label} eliminated by "
            f"congruence and valuation argument"
        )
        return 0
    print(f"q={args.q}: endgame inconclusive for p={p} on {label}")
    return 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except InvalidInputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except MethodInapplicableError as e:
        print(f"not applicable: {e}", file=sys.stderr)
        return 3
    except (DataUnavailableError, MissingCoefficientError) as e:
        print(f"data unavailable: {e}", file=sys.stderr)
        return 4
    except QfermatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
