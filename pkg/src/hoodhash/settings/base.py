from pathlib import Path
from typing import Any, Literal

import tomli
from pydantic import Field
from pydantic.fields import FieldInfo
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

PYPROJECT_TABLE = "hoodhash"


class PyprojectSettingsSource(PydanticBaseSettingsSource):
    """
    Read the ``[tool.hoodhash]`` table of ``./pyproject.toml``.

    Keys are matched case-insensitively against the settings fields, so both
    ``shard_log2 = 4`` and ``SHARD_LOG2 = 4`` work.
    """

    def __init__(self, settings_cls: type[BaseSettings], path: Path | None = None) -> None:
        super().__init__(settings_cls)
        self.path = path or Path("pyproject.toml")
        self._table = self._read_table()

    def _read_table(self) -> dict[str, Any]:
        if not self.path.exists():
            return {}
        with open(self.path, "rb") as f:
            pyproject = tomli.load(f)
        table = pyproject.get("tool", {}).get(PYPROJECT_TABLE, {})
        return {key.upper(): value for key, value in table.items()}

    def get_field_value(self, field: FieldInfo, field_name: str) -> tuple[Any, str, bool]:
        return self._table.get(field_name.upper()), field_name, False

    def __call__(self) -> dict[str, Any]:
        values: dict[str, Any] = {}
        for field_name, field in self.settings_cls.model_fields.items():
            value, key, _ = self.get_field_value(field, field_name)
            if value is not None:
                values[key] = value
        return values


class HoodhashSettings(BaseSettings):
    SHARD_LOG2: int = Field(default=3, ge=0, le=16)
    MAX_ENTRIES: int = Field(default=64, ge=1)
    MAX_THREAD_SLOTS: int = Field(default=2**20, ge=1, le=2**20)

    CAPACITY_LOG2: int = Field(default=18, ge=1, le=40)
    DURATION_SECS: float = Field(default=2.0, gt=0)
    TRIALS: int = Field(default=3, ge=1)
    SEED: int = Field(default=0x5EED, ge=0)
    BACKOFF: bool = False

    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        extra="ignore",
        case_sensitive=False,
        env_prefix="HOODHASH_",
        env_nested_delimiter="__",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return init_settings, env_settings, dotenv_settings, PyprojectSettingsSource(settings_cls)


def load_settings(**overrides: Any) -> HoodhashSettings:
    """Defaults, then ``[tool.hoodhash]``, then ``.env`` and ``HOODHASH_*`` variables, then ``overrides``."""
    return HoodhashSettings(**overrides)
