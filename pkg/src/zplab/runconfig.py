"""Run configuration: flag/config-file merging and output metadata blocks.

Config files are flat ``key = value`` text (UTF-8, ``#`` comments); flags
override file values.  Every emitted artifact starts with a metadata block
echoing the tool version, the effective constants, and the digests of the
inputs, so outputs are self-describing and runs are reproducible
byte-for-byte (nothing time-dependent is ever written).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from . import __version__
from .errors import DomainError


@dataclass
class RunConfig:
    command: str = ""
    subcommand: str = ""
    table: str | None = None
    trange: tuple[float, float] | None = None
    eps: float = 0.3
    cstar: float = 2.0
    c: float = 2.0
    a: float = 2.0
    seed: int = 202408
    samples: int = 300
    dim: int = 100
    degree: int = 16
    arc: tuple[float, float] = (0.0, 1.5707963267948966)
    fit: tuple[float, float] | None = None
    fit_prime: tuple[float, float] | None = None
    nu: float = 1.0
    index: int = 1
    inner: float = 0.0
    outer: float = 1.0
    out: str = "out"
    cache: str | None = None

    def cache_dir(self) -> Path:
        if self.cache:
            return Path(self.cache)
        env = os.environ.get("ZPL_CACHE")
        if env:
            return Path(env)
        return Path(self.out) / "cache"

    def echo_items(self) -> list[tuple[str, str]]:
        items: list[tuple[str, str]] = [("tool", f"zplab {__version__}")]
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None or v == "":
                continue
            if isinstance(v, tuple):
                v = ":".join(repr(x) for x in v)
            items.append((f.name, str(v)))
        return items


_PAIR_KEYS = {"trange", "arc", "fit", "fit_prime"}
_FLOAT_KEYS = {"eps", "cstar", "c", "a", "nu", "inner", "outer"}
_INT_KEYS = {"seed", "samples", "dim", "degree", "index"}

_ANGLE_TOKENS = {"pi": 3.141592653589793, "pi/2": 1.5707963267948966,
                 "pi/4": 0.7853981633974483, "2pi": 6.283185307179586}


def parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(":")
    if len(parts) != 2:
        raise DomainError(f"expected LO:HI, got {text!r}")
    return (_parse_angle(parts[0]), _parse_angle(parts[1]))


def _parse_angle(text: str) -> float:
    text = text.strip()
    if text in _ANGLE_TOKENS:
        return _ANGLE_TOKENS[text]
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"not a number: {text!r}")


def read_config_file(path: str | Path) -> dict[str, str]:
    out: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        if "=" not in text:
            raise DomainError(f"config line {line_no}: expected key = value")
        key, _, value = text.partition("=")
        out[key.strip().replace("-", "_")] = value.strip()
    return out


def apply_config_values(cfg: RunConfig, values: dict[str, str]):
    valid = {f.name for f in fields(cfg)}
    for key, raw in values.items():
        if key not in valid:
            raise DomainError(f"unknown config key {key!r}")
        if key in _PAIR_KEYS:
            setattr(cfg, key, parse_pair(raw))
        elif key in _FLOAT_KEYS:
            setattr(cfg, key, float(raw))
        elif key in _INT_KEYS:
            setattr(cfg, key, int(raw))
        else:
            setattr(cfg, key, raw)


def metadata_lines(cfg: RunConfig, digests: dict[str, str]) -> list[str]:
    lines = [f"{k}: {v}" for k, v in cfg.echo_items()]
    for name, digest in sorted(digests.items()):
        lines.append(f"digest[{name}]: {digest}")
    return lines


def csv_text(meta: list[str], header: str, rows: list[str]) -> str:
    head = [f"# {m}" for m in meta]
    return "\n".join(head + [header] + rows) + "\n"


def json_text(meta: list[str], payload: dict) -> str:
    import json
    return json.dumps({"meta": meta, **payload}, sort_keys=False, indent=2) + "\n"
