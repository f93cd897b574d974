"""Run configuration: defaults, env overlay, validation."""

from pathlib import Path

import pytest

from qfermat.config import DEFAULT_TSET, RunConfig, from_env
from qfermat.errors import InvalidInputError


def test_defaults():
    cfg = RunConfig()
    assert cfg.tset == DEFAULT_TSET == (3, 7, 11, 19)
    assert cfg.p_min == 14
    assert cfg.min_an == 600
    assert not cfg.offline
    assert cfg.reports == Path(cfg.cache_dir) / "reports"


def test_report_dir_override():
    cfg = RunConfig(report_dir=Path("/tmp/r"))
    assert cfg.reports == Path("/tmp/r")


def test_validation():
    with pytest.raises(InvalidInputError):
        RunConfig(fmt="xml")
    with pytest.raises(InvalidInputError):
        RunConfig(p_min=1)
    with pytest.raises(InvalidInputError):
        RunConfig(tset=())


def test_env_overlay_and_precedence():
    env = {
        "QFERMAT_TSET": "3, 7",
        "QFERMAT_OFFLINE": "yes",
        "QFERMAT_CACHE_DIR": "/tmp/c",
        "QFERMAT_P_MIN": "20",
        "QFERMAT_MIN_AN": "700",
        "QFERMAT_FORMAT": "md",
    }
    cfg = from_env(None, env)
    assert cfg.tset == (3, 7)
    assert cfg.offline is True
    assert cfg.cache_dir == Path("/tmp/c")
    assert cfg.p_min == 20
    assert cfg.min_an == 700
    assert cfg.fmt == "md"
    # explicit replace wins over the environment value
    assert cfg.replace(p_min=15).p_min == 15


def test_env_parsing_errors():
    with pytest.raises(InvalidInputError):
        from_env(None, {"QFERMAT_TSET": "3,x"})
    with pytest.raises(InvalidInputError):
        from_env(None, {"QFERMAT_OFFLINE": "maybe"})
    with pytest.raises(InvalidInputError):
        from_env(None, {"QFERMAT_FORMAT": "yaml"})


def test_env_ignores_unset(monkeypatch):
    for key in ("QFERMAT_TSET", "QFERMAT_OFFLINE"):
        monkeypatch.delenv(key, raising=False)
    assert RunConfig.from_env().tset == DEFAULT_TSET
