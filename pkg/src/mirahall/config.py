"""Run configuration: defaults, key=value files, precedence.

Precedence, lowest to highest: built-in defaults, config file, the
cache-directory environment variable, command-line flags.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from typing import Mapping

from .errors import IOFailure, UsageError

CACHE_ENV = "MIRAHALL_CACHE_DIR"
FORMATS = ("json", "csv", "latex")
DEFAULT_SEED = 2024


@dataclass(frozen=True)
class RunConfig:
    """Knobs shared by every subcommand.

    The defaults reproduce the acceptance suite: sizes up to 3, primes
    2 and 3, truncation window 2.  rank=0 means "same as n"."""

    n: int = 2
    rank: int = 0
    max_n: int = 3
    primes: tuple[int, ...] = (2, 3)
    window: int = 2
    fmt: str = "json"
    cache_dir: str = ""
    verbosity: int = 0
    seed: int = DEFAULT_SEED

    def resolved_rank(self, n: int | None = None) -> int:
        return self.rank if self.rank else (self.n if n is None else n)

    def validate(self) -> "RunConfig":
        if self.n < 0:
            raise UsageError(f"size n must be nonnegative, got {self.n}")
        if self.rank < 0:
            raise UsageError(f"rank must be nonnegative, got {self.rank}")
        if self.max_n < 0:
            raise UsageError(f"max_n must be nonnegative, got {self.max_n}")
        if not self.primes:
            raise UsageError("prime list is empty")
        if any(p < 2 for p in self.primes):
            raise UsageError(f"primes must be at least 2, got {self.primes}")
        if len(set(self.primes)) != len(self.primes):
            raise UsageError(f"repeated primes in {self.primes}")
        if self.window < 1:
            raise UsageError(f"window must be positive, got {self.window}")
        if self.fmt not in FORMATS:
            raise UsageError(f"format {self.fmt!r} not one of {FORMATS}")
        if self.verbosity < 0:
            raise UsageError("verbosity must be nonnegative")
        return self


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_ALIASES = {"format": "fmt"}


def parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in str(text).split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"bad prime list {text!r}") from None


def _coerce(key: str, value) -> object:
    if key == "primes":
        if isinstance(value, tuple):
            return value
        return parse_primes(value)
    if key in ("fmt", "cache_dir"):
        return str(value)
    try:
        return int(value)
    except (TypeError, ValueError):
        raise UsageError(f"config key {key}: bad integer {value!r}") from None


def read_config_file(path: str) -> dict[str, str]:
    """key=value lines; # starts a comment; unknown keys are rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise IOFailure(f"cannot read config {path}: {exc}") from exc
    out: dict[str, str] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        key = _ALIASES.get(key, key)
        if key not in _FIELD_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def resolve(file_values: Mapping[str, object] | None = None,
            flag_values: Mapping[str, object] | None = None) -> RunConfig:
    """Fold the three sources over the defaults and validate.

    flag_values entries that are None count as "flag not given"."""
    cfg = RunConfig()
    for key, value in (file_values or {}).items():
        cfg = replace(cfg, **{key: _coerce(key, value)})
    env = os.environ.get(CACHE_ENV)
    if env:
        cfg = replace(cfg, cache_dir=env)
    for key, value in (flag_values or {}).items():
        if value is None:
            continue
        if key not in _FIELD_TYPES:
            raise UsageError(f"unknown config field {key!r}")
        cfg = replace(cfg, **{key: _coerce(key, value)})
    return cfg.validate()
