"""
Run configuration: defaults, then a key=value file, then FFF_ environment
variables, then explicit command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from typing import Mapping, Optional, Tuple

from utils.errors import InputContractError, ParseError

EXAMPLES_DIR = os.path.join("data", "examples")
ENV_PREFIX = "FFF_"

MAX_ORDER = 10
FORMATS = ("json", "csv")


@dataclass(frozen=True)
class Config:
    order: int = 8
    ladder: Tuple[int, ...] = (64, 128, 256, 512)
    output_format: str = "json"
    cache_dir: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise ParseError(f"order must be in 1..{MAX_ORDER}, got {self.order}")
        ladder = tuple(self.ladder)
        if len(ladder) < 2 or any(b <= a for a, b in zip(ladder, ladder[1:])):
            raise ParseError(f"ladder must be strictly increasing with at least two degrees, got {ladder}")
        object.__setattr__(self, "ladder", ladder)
        if self.output_format not in FORMATS:
            raise ParseError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.workers < 1:
            raise ParseError(f"workers must be positive, got {self.workers}")


# -----------------------------
# Parsing helpers
# -----------------------------
def parse_int(key: str, text: str) -> int:
    try:
        return int(text.strip())
    except ValueError as e:
        raise ParseError(f"{key}: expected an integer, got {text!r}") from e


def parse_ladder(text: str) -> Tuple[int, ...]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ParseError("ladder: expected comma-separated degrees")
    return tuple(parse_int("ladder", p) for p in parts)


def _convert(key: str, value: str):
    if key == "order":
        return "order", parse_int(key, value)
    if key == "ladder":
        return "ladder", parse_ladder(value)
    if key == "format":
        return "output_format", value.strip()
    if key == "cache_dir":
        return "cache_dir", value.strip() or None
    if key == "workers":
        return "workers", parse_int(key, value)
    raise ParseError(f"unknown config key {key!r}")


def read_config_file(path: str) -> dict:
    """key=value lines; '#' starts a comment."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise InputContractError(f"cannot read config file {path}: {e}") from e
    out = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"{path}:{number}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        name, converted = _convert(key, value)
        out[name] = converted
    return out


def read_environment(environ: Mapping[str, str]) -> dict:
    out = {}
    if environ.get(ENV_PREFIX + "CACHE_DIR"):
        out["cache_dir"] = environ[ENV_PREFIX + "CACHE_DIR"]
    if environ.get(ENV_PREFIX + "WORKERS"):
        out["workers"] = parse_int(ENV_PREFIX + "WORKERS", environ[ENV_PREFIX + "WORKERS"])
    return out


def load_config(path: Optional[str] = None, environ: Optional[Mapping[str, str]] = None, **overrides) -> Config:
    """Build a Config; overrides set to None are ignored."""
    values = {}
    if path:
        values.update(read_config_file(path))
    values.update(read_environment(os.environ if environ is None else environ))
    values.update({k: v for k, v in overrides.items() if v is not None})
    return replace(Config(), **values)
