"""Background topic classification for generated responses.

The avatar background follows the conversation topic. Scripted nodes carry
their own hints; generated text goes through this keyword classifier, which
returns one of the six themed backgrounds or IDLE when nothing scores.
"""

from __future__ import annotations

from importlib import resources

import yaml

from socialbot.core.clients import Classification
from socialbot.core.text import lower_tokens
from socialbot.gateway.ui import Background


def _load_table() -> dict[Background, frozenset[str]]:
    raw = resources.files("socialbot.data").joinpath("topic_keywords.yaml").read_text("utf-8")
    parsed = yaml.safe_load(raw)
    return {Background[topic]: frozenset(words) for topic, words in parsed.items()}


class TopicClassifier:
    """ClassifierClient over the bundled keyword table."""

    name = "topic-keywords"

    def __init__(self, table: dict[Background, frozenset[str]] | None = None,
                 min_hits: int = 1):
        self.table = table or _load_table()
        self.min_hits = min_hits

    def classify(self, text: str) -> Classification:
        tokens = lower_tokens(text)
        best = Background.IDLE
        best_hits = 0
        for topic, words in self.table.items():
            hits = sum(1 for t in tokens if t in words)
            if hits > best_hits:
                best, best_hits = topic, hits
        if best_hits < self.min_hits:
            return Classification(label=Background.IDLE.value, probability=0.5)
        probability = min(0.95, 0.5 + 0.15 * best_hits)
        return Classification(label=best.value, probability=probability)


def classify_topic(text: str, classifier: TopicClassifier | None = None) -> Background:
    if not text.strip():
        raise ValueError("text must be non-empty")
    result = (classifier or TopicClassifier()).classify(text)
    return Background[result.label]
