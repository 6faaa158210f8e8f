"""Pipeline configuration: a flat key = value file plus command-line overrides."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any

from honeyenc.embeddings import MECHANISM_MODES
from honeyenc.errors import InputError, ParseError

CATEGORY_MODES = ("classify", "fixed_random", "per_seed_random")


@dataclass(frozen=True)
class PipelineConfig:
    corpus_path: str | None = None
    stopword_path: str | None = None
    synset_path: str | None = None
    vector_path: str | None = None
    category_mode: str = "classify"
    keywords_k: int = 8
    p_halt: float = 0.5
    per_keyword: int = 2
    epsilon: float = 20.0
    mechanism: str = "discrete_exponential"
    generator: str = "ngram"
    external_command: str | None = None
    ngram_order: int = 2
    max_tokens: int | None = None
    keyword_boost: float = 5.0
    table_size: int = 256
    kdf_iterations: int = 10_000
    smoothing_alpha: float = 1.0
    stem: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.category_mode not in CATEGORY_MODES:
            raise InputError(f"category_mode must be one of {', '.join(CATEGORY_MODES)}")
        if self.mechanism not in MECHANISM_MODES:
            raise InputError(f"mechanism must be one of {', '.join(MECHANISM_MODES)}")
        if self.generator not in ("ngram", "external"):
            raise InputError("generator must be 'ngram' or 'external'")
        if self.generator == "external" and not self.external_command:
            raise InputError("generator=external needs external_command")
        t = self.table_size
        if t < 2 or t & (t - 1) or t > 2**64:
            raise InputError("table_size must be a power of two >= 2")
        if self.keywords_k < 1 or self.per_keyword < 1:
            raise InputError("keywords_k and per_keyword must be positive")
        if not 0 < self.p_halt <= 1:
            raise InputError("p_halt must lie in (0, 1]")
        if not self.epsilon > 0:
            raise InputError("epsilon must be positive")
        if not 0 <= self.kdf_iterations < 2**32:
            raise InputError("kdf_iterations must fit in 32 bits")
        if self.max_tokens is not None and self.max_tokens < 1:
            raise InputError("max_tokens must be positive")
        if not 2 <= self.ngram_order <= 4:
            raise InputError("ngram_order must be between 2 and 4")
        if self.keyword_boost < 1:
            raise InputError("keyword_boost must be at least 1")
        if not self.smoothing_alpha > 0:
            raise InputError("smoothing_alpha must be positive")

    def replace(self, **changes) -> "PipelineConfig":
        return dataclasses.replace(self, **changes)


_BOOL = {"true": True, "yes": True, "on": True, "1": True,
         "false": False, "no": False, "off": False, "0": False}


def _convert(name: str, raw: str, annotation: str) -> Any:
    raw = raw.strip()
    if "None" in annotation and raw.lower() in ("", "none"):
        return None
    try:
        if annotation.startswith("int"):
            return int(raw)
        if annotation.startswith("float"):
            return float(raw)
        if annotation.startswith("bool"):
            return _BOOL[raw.lower()]
    except (ValueError, KeyError):
        raise InputError(f"bad value for {name}: {raw!r}") from None
    return raw


FIELD_TYPES = {f.name: str(f.type) for f in fields(PipelineConfig)}


def coerce(values: dict[str, str]) -> dict[str, Any]:
    out = {}
    for key, raw in values.items():
        name = key.strip().replace("-", "_")
        if name not in FIELD_TYPES:
            raise InputError(f"unknown configuration key {key!r}")
        out[name] = _convert(name, raw, FIELD_TYPES[name]) if isinstance(raw, str) else raw
    return out


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", lineno, source)
        key, value = line.split("=", 1)
        values[key.strip()] = value.strip()
    return values


def load_config(path: str | Path | None = None, **overrides) -> PipelineConfig:
    values: dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read config {path}: {exc}") from exc
        values.update(coerce(parse_config_text(text, str(path))))
    values.update(coerce({k: v for k, v in overrides.items() if v is not None}))
    return PipelineConfig(**values)
