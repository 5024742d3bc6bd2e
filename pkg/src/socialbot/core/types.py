"""Immutable conversation state shared by every stage of the bot.

All types here are values: once constructed they are never mutated, so they
can be passed freely between threads. Session-level mutation happens only in
the gateway, which owns a single writer per session.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class Speaker(enum.Enum):
    USER = "user"
    BOT = "bot"


@dataclass(frozen=True, slots=True)
class Utterance:
    """One turn of the conversation.

    ``punctuated_text``, when set, is the same text normalised with terminal
    punctuation and sentence-initial capitalisation; nothing else may differ.
    Timestamps are milliseconds since the epoch.
    """

    speaker: Speaker
    text: str
    punctuated_text: str | None = None
    timestamp: int = 0

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("utterance text must be non-empty")

    @property
    def display_text(self) -> str:
        return self.punctuated_text if self.punctuated_text is not None else self.text


@dataclass(frozen=True, slots=True)
class ConversationContext:
    """Ordered turn history for one session.

    Turns are strictly ordered by timestamp. Speakers need not alternate:
    the system may emit several bot turns in a row.
    """

    session_id: str
    turns: tuple[Utterance, ...] = ()
    max_window: int = 6

    def __post_init__(self) -> None:
        if self.max_window < 1:
            raise ValueError("max_window must be >= 1")
        stamps = [t.timestamp for t in self.turns]
        if any(b <= a for a, b in zip(stamps, stamps[1:])):
            raise ValueError("turns must be strictly ordered by timestamp")

    def append(self, utterance: Utterance) -> ConversationContext:
        return ConversationContext(
            session_id=self.session_id,
            turns=self.turns + (utterance,),
            max_window=self.max_window,
        )

    def last_user_turn(self) -> Utterance | None:
        for turn in reversed(self.turns):
            if turn.speaker is Speaker.USER:
                return turn
        return None

    def user_turns(self) -> tuple[Utterance, ...]:
        return tuple(t for t in self.turns if t.speaker is Speaker.USER)

    def __len__(self) -> int:
        return len(self.turns)


def window(context: ConversationContext, n: int) -> ConversationContext:
    """Restrict ``context`` to its last ``min(n, len)`` turns, order preserved."""
    if n < 1:
        raise ValueError("window size must be >= 1")
    return ConversationContext(
        session_id=context.session_id,
        turns=context.turns[-n:],
        max_window=context.max_window,
    )


class UnknownFactKeyError(KeyError):
    """Raised when a fact key outside the configured vocabulary is inserted."""


@dataclass(frozen=True, slots=True)
class FactEntry:
    value: str
    source_turn: int
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")


@dataclass
class UserProfile:
    """Facts learned about the user, keyed by a configured vocabulary.

    Re-asserting a key overwrites its value and source turn; unknown keys
    are rejected so tree authors cannot silently typo a slot name.
    """

    vocabulary: frozenset[str]
    entries: dict[str, FactEntry] = field(default_factory=dict)

    def insert(self, key: str, value: str, source_turn: int, confidence: float) -> None:
        if key not in self.vocabulary:
            raise UnknownFactKeyError(key)
        self.entries[key] = FactEntry(value=value, source_turn=source_turn, confidence=confidence)

    def get(self, key: str) -> str | None:
        entry = self.entries.get(key)
        return entry.value if entry is not None else None

    def keys(self) -> list[str]:
        return list(self.entries)

    def as_dict(self) -> dict[str, dict]:
        return {
            k: {"value": e.value, "source_turn": e.source_turn, "confidence": e.confidence}
            for k, e in self.entries.items()
        }
