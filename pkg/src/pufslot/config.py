"""Flat ``key = value`` config files for SimConfig.

Blank lines and ``#`` comments are ignored. Precedence is
command-line flag > file > built-in default.
"""

from __future__ import annotations

from dataclasses import fields, replace
from pathlib import Path

from .sim import ConfigError, SimConfig

_TYPES = {f.name: type(getattr(SimConfig(), f.name)) for f in fields(SimConfig)}


def _coerce(key: str, raw: str):
    kind = _TYPES[key]
    raw = raw.strip()
    try:
        if kind is bool:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind is int:
            return int(raw, 0)
        return kind(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {kind.__name__}") from None


def parse_config_text(text: str) -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


def load_config(path=None, overrides: dict | None = None) -> SimConfig:
    values = parse_config_text(Path(path).read_text()) if path else {}
    for key, v in (overrides or {}).items():
        if v is not None:
            values[key] = _coerce(key, v) if isinstance(v, str) else v
    return replace(SimConfig(), **values).validate()


def dump_config(cfg: SimConfig) -> str:
    lines = []
    for f in fields(SimConfig):
        v = getattr(cfg, f.name)
        text = str(v).lower() if isinstance(v, bool) else repr(v)
        lines.append(f"{f.name} = {text}")
    return "\n".join(lines) + "\n"


def config_keys() -> dict:
    return dict(_TYPES)
