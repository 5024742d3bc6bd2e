"""Skimmer: regex fact extraction from user utterances into the profile."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import yaml

from socialbot.core.types import Utterance


@dataclass(frozen=True)
class SkimmerRule:
    pattern: re.Pattern
    fact_key: str
    confidence: float

    @classmethod
    def make(cls, pattern: str, fact_key: str, confidence: float = 0.9) -> "SkimmerRule":
        return cls(pattern=re.compile(pattern, re.IGNORECASE), fact_key=fact_key,
                   confidence=confidence)


def load_skimmer_rules(path: str | Path, vocabulary: frozenset[str]) -> list[SkimmerRule]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = yaml.safe_load(fh) or []
    rules = []
    for item in raw:
        if item["fact_key"] not in vocabulary:
            raise ValueError(f"skimmer rule targets unknown fact key {item['fact_key']!r}")
        rules.append(
            SkimmerRule.make(item["pattern"], item["fact_key"], float(item.get("confidence", 0.9)))
        )
    return rules


def skim(utterance: Utterance, rules: list[SkimmerRule]) -> list[tuple[str, str, float]]:
    """All facts found in the utterance; later profile insertion deduplicates."""
    facts: list[tuple[str, str, float]] = []
    text = utterance.display_text
    for rule in rules:
        for match in rule.pattern.finditer(text):
            groups = match.groupdict()
            value = groups.get("value") or match.group(0)
            facts.append((rule.fact_key, value.strip().lower(), rule.confidence))
    return facts
