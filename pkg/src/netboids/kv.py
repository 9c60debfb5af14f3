"""Flat ``key = value`` configuration dialect.

One assignment per line; ``#`` starts a comment; keys may contain dots
(``neighborhood.kind``).  Real values accept multiples of pi (``2pi``,
``pi/2``, ``0.5*pi``) so angles can be written by hand.
"""

from __future__ import annotations

import math
import re
from pathlib import Path

from netboids.errors import ConfigError

_PI_RE = re.compile(
    r"^(?P<coef>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*\*?\s*pi\s*(?:/\s*(?P<div>\d+\.?\d*))?$"
)


def parse_text(text: str, source: str = "<string>") -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        if key in out:
            raise ConfigError(f"{source}:{lineno}: duplicate key '{key}'")
        out[key] = value
    return out


def read(path) -> dict[str, str]:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    return parse_text(path.read_text(), str(path))


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def dumps(mapping: dict) -> str:
    return "".join(f"{k} = {format_value(v)}\n" for k, v in mapping.items())


def write(mapping: dict, path) -> None:
    Path(path).write_text(dumps(mapping))


def parse_real(key: str, text: str) -> float:
    s = text.strip().lower()
    try:
        value = float(s)
    except ValueError:
        m = _PI_RE.match(s)
        if not m:
            raise ConfigError(f"{key}: expected a real number, got {text!r}") from None
        value = float(m.group("coef") or 1.0) * math.pi
        if m.group("div"):
            value /= float(m.group("div"))
    if not math.isfinite(value):
        raise ConfigError(f"{key}: value must be finite, got {text!r}")
    return value


def parse_int(key: str, text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def parse_bool(key: str, text: str) -> bool:
    s = text.strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def parse_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]
