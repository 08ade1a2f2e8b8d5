from pathlib import Path

import pytest

from hoodhash.settings import HoodhashSettings, load_settings


def test_defaults(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    settings = load_settings()
    assert settings.SHARD_LOG2 == 3
    assert settings.MAX_ENTRIES == 64
    assert settings.CAPACITY_LOG2 == 18
    assert settings.TRIALS == 3
    assert settings.BACKOFF is False


def test_environment_overrides(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOODHASH_SHARD_LOG2", "5")
    monkeypatch.setenv("hoodhash_backoff", "true")
    settings = load_settings()
    assert settings.SHARD_LOG2 == 5
    assert settings.BACKOFF is True


def test_pyproject_table(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    (tmp_path / "pyproject.toml").write_text('[tool.hoodhash]\nshard_log2 = 2\nTRIALS = 9\n')
    monkeypatch.chdir(tmp_path)
    settings = load_settings()
    assert settings.SHARD_LOG2 == 2
    assert settings.TRIALS == 9


def test_environment_beats_pyproject(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    (tmp_path / "pyproject.toml").write_text("[tool.hoodhash]\nshard_log2 = 2\n")
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOODHASH_SHARD_LOG2", "4")
    assert load_settings().SHARD_LOG2 == 4


def test_explicit_overrides_win(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOODHASH_SHARD_LOG2", "4")
    assert load_settings(SHARD_LOG2=1).SHARD_LOG2 == 1
    assert isinstance(load_settings(), HoodhashSettings)
