"""Flat `key = value` scenario configuration."""
from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace
from pathlib import Path

from ..errors import ConfigParseError, ConfigValidationError
from ..metrics import Metric
from ..protocols import PROTOCOL_NAMES
from ..vcs import ANCHOR_STRATEGIES

CONFIG_KEYS = ("n", "field_w", "field_h", "radio_range", "seed", "anchors_k", "anchor_strategy",
               "metric", "loc_error", "protocols", "pairs", "ttl_mult", "node_file")


@dataclass(frozen=True)
class ScenarioConfig:
    n: int = 250
    field_w: float = 1000.0
    field_h: float = 1000.0
    radio_range: float = 100.0
    seed: int = 1
    anchors_k: int = 4
    anchor_strategy: str = "corners"
    metric: str = "vc-ed"
    loc_error: float = 0.0
    protocols: tuple[str, ...] = PROTOCOL_NAMES
    # "auto" (500 random pairs when n > 100, else all), "all", an integer m,
    # or an explicit list like "0>7, 3>1"
    pairs: str = "auto"
    ttl_mult: float = 4.0
    node_file: str | None = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.node_file is None and self.n < 2:
            raise ConfigValidationError("n", "must be at least 2")
        for name in ("field_w", "field_h", "radio_range"):
            if not getattr(self, name) > 0:
                raise ConfigValidationError(name, "must be positive")
        if self.anchors_k < 1:
            raise ConfigValidationError("anchors_k", "must be at least 1")
        if self.node_file is None and self.anchors_k > self.n:
            raise ConfigValidationError("anchors_k", "cannot exceed n")
        if self.anchor_strategy not in ANCHOR_STRATEGIES:
            raise ConfigValidationError("anchor_strategy", f"unknown strategy {self.anchor_strategy!r}")
        try:
            metric = Metric(self.metric)
        except ValueError:
            raise ConfigValidationError("metric", f"unknown metric {self.metric!r}") from None
        if not metric.is_vc:
            raise ConfigValidationError("metric", "VC protocols need a virtual-coordinate metric")
        if not self.loc_error >= 0:
            raise ConfigValidationError("loc_error", "must be nonnegative")
        if not self.protocols:
            raise ConfigValidationError("protocols", "at least one protocol required")
        for p in self.protocols:
            if p not in PROTOCOL_NAMES:
                raise ConfigValidationError("protocols", f"unknown protocol {p!r}")
        if not self.ttl_mult > 0:
            raise ConfigValidationError("ttl_mult", "must be positive")
        parse_pairs(self.pairs)

    def ttl_for(self, n: int) -> int:
        return max(1, math.ceil(self.ttl_mult * n))

    def with_value(self, **kw) -> "ScenarioConfig":
        return replace(self, **kw)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            if isinstance(v, tuple):
                v = ",".join(v)
            lines.append(f"{f.name} = {v}")
        return "\n".join(lines) + "\n"


def parse_pairs(text: str):
    """Returns "auto", "all", an int, or a list of (src, dst)."""
    text = str(text).strip()
    if text in ("auto", "all"):
        return text
    if text.isdigit():
        m = int(text)
        if m < 1:
            raise ConfigValidationError("pairs", "random pair count must be positive")
        return m
    out = []
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        try:
            s, d = item.split(">")
            out.append((int(s), int(d)))
        except ValueError:
            raise ConfigValidationError("pairs", f"cannot parse pair {item!r}") from None
    if not out:
        raise ConfigValidationError("pairs", "empty pair list")
    return out


_CASTS = {
    "n": int, "seed": int, "anchors_k": int,
    "field_w": float, "field_h": float, "radio_range": float, "loc_error": float, "ttl_mult": float,
}


def parse_config(text: str, base_dir: Path | None = None) -> ScenarioConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigParseError(lineno, f"expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigValidationError(key, "unknown key")
        if key in values:
            raise ConfigParseError(lineno, f"duplicate key {key!r}")
        if key in _CASTS:
            try:
                values[key] = _CASTS[key](value)
            except ValueError:
                raise ConfigValidationError(key, f"not a valid number: {value!r}") from None
        elif key == "protocols":
            values[key] = tuple(p.strip() for p in value.split(",") if p.strip())
        elif key == "node_file":
            p = Path(value)
            if base_dir is not None and not p.is_absolute():
                p = base_dir / p
            values[key] = str(p)
        else:
            values[key] = value
    return ScenarioConfig(**values)


def load_config(path) -> ScenarioConfig:
    path = Path(path)
    return parse_config(path.read_text(), base_dir=path.parent)
