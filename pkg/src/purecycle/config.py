"""Run settings from a key=value file, overridden by command-line flags."""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .enumeration import Bounds

__all__ = ["Settings", "load_settings"]


@dataclass(frozen=True)
class Settings:
    max_degree: int = 8
    max_entries: int = 7
    workers: int = 1
    orbit_memory_cap: int = 2_000_000
    group_max_degree: int = 10
    extended: bool = False

    @property
    def bounds(self) -> Bounds:
        # the extended gate admits the degree-10 three-point checks
        max_degree = max(self.max_degree, 10) if self.extended else self.max_degree
        return Bounds(max_degree, self.max_entries, self.workers)

    def override(self, **flags) -> "Settings":
        given = {k: v for k, v in flags.items() if v is not None}
        return replace(self, **given)


def _coerce(name: str, text: str):
    kind = {f.name: f.type for f in fields(Settings)}[name]
    if kind in ("bool", bool):
        low = text.strip().lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"{name}: expected a boolean, got {text!r}")
    value = int(text)
    if value < 1:
        raise ValueError(f"{name} must be positive")
    return value


def load_settings(path: str | Path | None) -> Settings:
    """Read ``key = value`` lines; ``#`` starts a comment. Unknown keys are errors."""
    if path is None:
        return Settings()
    text = Path(path).read_text()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.read_string("[settings]\n" + text)
    known = {f.name for f in fields(Settings)}
    values = {}
    for key, raw in parser["settings"].items():
        key = key.replace("-", "_")
        if key not in known:
            raise ValueError(f"unknown setting {key!r} in {path}")
        values[key] = _coerce(key, raw)
    return Settings(**values)
