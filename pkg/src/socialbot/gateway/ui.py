"""UI hinting: templates, themed backgrounds, preserve mode, karaoke timing."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace


class Template(enum.Enum):
    LANDING = "LANDING"
    IMAGE_LIST = "IMAGE_LIST"
    KARAOKE_CHAT = "KARAOKE_CHAT"
    KARAOKE_DETAIL = "KARAOKE_DETAIL"
    KARAOKE_AVATAR = "KARAOKE_AVATAR"


class Background(enum.Enum):
    """The nine avatar animations: three general, six topic themed."""

    IDLE = "IDLE"
    GREETINGS = "GREETINGS"
    ERROR = "ERROR"
    GAMING = "GAMING"
    EDUCATION = "EDUCATION"
    MUSIC = "MUSIC"
    ART = "ART"
    TRAVELING = "TRAVELING"
    SCIENCE = "SCIENCE"


TOPIC_BACKGROUNDS = (
    Background.GAMING,
    Background.EDUCATION,
    Background.MUSIC,
    Background.ART,
    Background.TRAVELING,
    Background.SCIENCE,
)


@dataclass(frozen=True, slots=True)
class KaraokeSegment:
    text: str
    duration_ms: int

    def __post_init__(self) -> None:
        if self.duration_ms <= 0:
            raise ValueError("segment duration must be positive")


@dataclass(frozen=True, slots=True)
class TemplateHint:
    template: Template = Template.KARAOKE_CHAT
    background: Background = Background.IDLE
    preserve: bool = False
    karaoke_segments: tuple[KaraokeSegment, ...] = ()

    def as_dict(self) -> dict:
        return {
            "template": self.template.value,
            "background": self.background.value,
            "preserve": self.preserve,
            "karaoke_segments": [
                {"text": s.text, "duration_ms": s.duration_ms} for s in self.karaoke_segments
            ],
        }


@dataclass(frozen=True, slots=True)
class UiState:
    """What the client is currently showing, carried across turns."""

    active: TemplateHint = field(default_factory=TemplateHint)
    preserved: bool = False

    def as_dict(self) -> dict:
        return {"active": self.active.as_dict(), "preserved": self.preserved}


def apply_preserve(ui_state: UiState, new_hint: TemplateHint | None) -> UiState:
    """Preserve-mode semantics: a missing hint keeps the remembered template;
    a new hint always takes over and records its own preserve flag."""
    if new_hint is None:
        if ui_state.preserved:
            return ui_state
        return UiState(active=TemplateHint(), preserved=False)
    return UiState(active=new_hint, preserved=new_hint.preserve)


def karaoke_segments(bot_text: str, speech_rate_wpm: float,
                     words_per_segment: int = 4) -> tuple[KaraokeSegment, ...]:
    """Word-group segments timed by a words-per-minute model.

    Durations are integer milliseconds whose sum equals the total estimated
    speech time for the whole text, up to rounding of the final segment.
    """
    if speech_rate_wpm <= 0:
        raise ValueError("speech rate must be positive")
    words = bot_text.split()
    if not words:
        return ()
    ms_per_word = 60000.0 / speech_rate_wpm
    segments: list[KaraokeSegment] = []
    emitted_ms = 0
    consumed_words = 0
    for start in range(0, len(words), words_per_segment):
        group = words[start : start + words_per_segment]
        consumed_words += len(group)
        target_total = round(consumed_words * ms_per_word)
        duration = max(1, target_total - emitted_ms)
        emitted_ms += duration
        segments.append(KaraokeSegment(text=" ".join(group), duration_ms=duration))
    return tuple(segments)


def with_karaoke(hint: TemplateHint, bot_text: str, speech_rate_wpm: float) -> TemplateHint:
    return replace(hint, karaoke_segments=karaoke_segments(bot_text, speech_rate_wpm))
