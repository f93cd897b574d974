"""Run configuration: flags, environment, defaults.

Every CLI flag has an environment twin with the QFERMAT_ prefix; explicit
flags win over the environment, which wins over defaults.  `offline = True`
guarantees no network is touched anywhere downstream (the client is simply
never constructed).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import InvalidInputError

__all__ = ["RunConfig", "DEFAULT_TSET"]

DEFAULT_TSET = (3, 7, 11, 19)
_ENV_PREFIX = "QFERMAT_"


@dataclass(frozen=True, slots=True)
class RunConfig:
    source_url: str = "https://www.lmfdb.org"
    cache_dir: Path = Path.home() / ".cache" / "qfermat"
    report_dir: Path | None = None  # defaults to cache_dir / "reports"
    tset: tuple[int, ...] = DEFAULT_TSET
    p_min: int = 14
    offline: bool = False
    fmt: str = "json"
    min_an: int = 600
    workers: int = 1

    def __post_init__(self) -> None:
        if self.fmt not in ("json", "md"):
            raise InvalidInputError(f"format must be json or md, got {self.fmt!r}")
        if self.p_min < 2:
            raise InvalidInputError("p_min must be at least 2")
        if not self.tset:
            raise InvalidInputError("tset must be nonempty")

    @property
    def reports(self) -> Path:
        return Path(self.report_dir) if self.report_dir else Path(self.cache_dir) / "reports"

    def replace(self, **updates) -> RunConfig:
        return replace(self, **updates)

    @classmethod
    def from_env(cls, env=os.environ) -> RunConfig:
        return from_env(None, env)


def _parse_tset(s: str) -> tuple[int, ...]:
    try:
        ts = tuple(int(x) for x in s.replace(" ", "").split(",") if x)
    except ValueError as e:
        raise InvalidInputError(f"bad tset {s!r}: {e}") from e
    if not ts:
        raise InvalidInputError("tset must be nonempty")
    return ts


def _parse_bool(s: str) -> bool:
    if s.lower() in ("1", "true", "yes", "on"):
        return True
    if s.lower() in ("0", "false", "no", "off"):
        return False
    raise InvalidInputError(f"bad boolean {s!r}")


def from_env(base: RunConfig | None = None, env=os.environ) -> RunConfig:
    """Overlay QFERMAT_* environment variables on a base config."""
    cfg = base or RunConfig()
    updates = {}
    if v := env.get(_ENV_PREFIX + "SOURCE_URL"):
        updates["source_url"] = v
    if v := env.get(_ENV_PREFIX + "CACHE_DIR"):
        updates["cache_dir"] = Path(v)
    if v := env.get(_ENV_PREFIX + "REPORT_DIR"):
        updates["report_dir"] = Path(v)
    if v := env.get(_ENV_PREFIX + "TSET"):
        updates["tset"] = _parse_tset(v)
    if v := env.get(_ENV_PREFIX + "P_MIN"):
        updates["p_min"] = int(v)
    if v := env.get(_ENV_PREFIX + "OFFLINE"):
        updates["offline"] = _parse_bool(v)
    if v := env.get(_ENV_PREFIX + "FORMAT"):
        updates["fmt"] = v
    if v := env.get(_ENV_PREFIX + "MIN_AN"):
        updates["min_an"] = int(v)
    return replace(cfg, **updates) if updates else cfg
