"""Pipeline configuration: every scalar knob in one dataclass.

Values can come from a YAML file and be overridden per-field through
``SOCIALBOT_<FIELD>`` environment variables.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields
from pathlib import Path

import yaml

ENV_PREFIX = "SOCIALBOT_"


@dataclass(frozen=True)
class PipelineConfig:
    # Output decision rule 2 requires the search-need probability to exceed this.
    do_search_rule2_threshold: float = 0.9
    # Aggregate search deadline, seconds.
    apihub_timeout: float = 1.5
    # Search-result cache lifetime, seconds (14 days).
    cache_ttl: float = 14 * 24 * 3600.0
    llm_loop_max_turns: int = 3
    safety_confidence_threshold: float = 0.8
    # Per-generator call deadline, seconds.
    generator_deadline: float = 2.0
    # Turns of history exposed to generators.
    context_window: int = 6
    # Fraction of knowledge content tokens that must appear in a response
    # for the response to count as "knowledge included".
    knowledge_inclusion_threshold: float = 0.5
    # Minimum known-word ratio below which generator output counts as nonsense.
    nonsense_known_word_floor: float = 0.5
    # Words-per-minute assumed by the synthetic speech-timing model.
    speech_rate_wpm: float = 120.0
    # When the classifier consensus is inconclusive and no rule matches,
    # fall back to SAFE (False) or UNSAFE (True).
    safety_fallback_unsafe: bool = False
    seed: int = 7

    def __post_init__(self) -> None:
        for name in (
            "do_search_rule2_threshold",
            "safety_confidence_threshold",
            "knowledge_inclusion_threshold",
            "nonsense_known_word_floor",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        for name in ("apihub_timeout", "cache_ttl", "generator_deadline", "speech_rate_wpm"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.llm_loop_max_turns < 1:
            raise ValueError("llm_loop_max_turns must be >= 1")
        if self.context_window < 1:
            raise ValueError("context_window must be >= 1")


def _coerce(raw: str, target_type: type) -> object:
    if target_type is bool:
        return raw.strip().lower() in {"1", "true", "yes", "on"}
    if target_type is int:
        return int(raw)
    if target_type is float:
        return float(raw)
    return raw


def load_config(path: str | Path | None = None, env: dict[str, str] | None = None) -> PipelineConfig:
    """Build a config from an optional YAML file plus environment overrides."""
    values: dict[str, object] = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            document = yaml.safe_load(fh) or {}
        if not isinstance(document, dict):
            raise ValueError(f"config file {path} must contain a mapping")
        known = {f.name for f in fields(PipelineConfig)}
        unknown = set(document) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values.update(document)

    environ = os.environ if env is None else env
    for f in fields(PipelineConfig):
        raw = environ.get(ENV_PREFIX + f.name.upper())
        if raw is not None:
            values[f.name] = _coerce(raw, type(f.default))
    return PipelineConfig(**values)  # type: ignore[arg-type]
