"""Runtime settings shared by the service and CLI.

Precedence: explicit flags > settings file > built-in defaults.
"""

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import MioError
from .timing import TimingConfig

SETTINGS_FIELDS = ("unit_ms", "suffix_mode", "word_list_path", "playback_text_path", "log_path")


@dataclass(frozen=True)
class Settings:
    unit_ms: int = 200
    suffix_mode: bool = True
    word_list_path: str | None = None
    playback_text_path: str | None = None
    log_path: str = "attempts.jsonl"

    def __post_init__(self):
        TimingConfig(unit_ms=self.unit_ms)  # bounds check
        for path in (self.word_list_path, self.playback_text_path):
            if path is not None and not Path(path).is_file():
                raise MioError(f"configured file does not exist: {path}")

    @property
    def timing(self) -> TimingConfig:
        return TimingConfig(unit_ms=self.unit_ms)

    def to_json(self) -> dict:
        return {name: getattr(self, name) for name in SETTINGS_FIELDS}


def load_settings(path: str | Path) -> Settings:
    """Read a JSON settings file; unknown keys are rejected."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    unknown = set(data) - set(SETTINGS_FIELDS)
    if unknown:
        raise MioError(f"unknown settings keys: {sorted(unknown)}")
    return Settings(**data)


def merge_settings(base: Settings, **overrides) -> Settings:
    """Apply non-None overrides (e.g. CLI flags) on top of `base`."""
    changes = {k: v for k, v in overrides.items() if v is not None}
    return replace(base, **changes) if changes else base
