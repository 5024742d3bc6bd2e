from socialbot.gateway.ui import (
    Background,
    KaraokeSegment,
    Template,
    TemplateHint,
    UiState,
    apply_preserve,
    karaoke_segments,
)
from socialbot.gateway.topics import TopicClassifier, classify_topic

__all__ = [
    "Background",
    "KaraokeSegment",
    "Template",
    "TemplateHint",
    "UiState",
    "apply_preserve",
    "karaoke_segments",
    "TopicClassifier",
    "classify_topic",
]
