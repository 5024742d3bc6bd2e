from __future__ import annotations

import pytest

from socialbot.core.config import PipelineConfig
from socialbot.core.types import ConversationContext, Speaker, Utterance


def make_context(*texts: str, session_id: str = "t", max_window: int = 6,
                 last_speaker: Speaker = Speaker.USER) -> ConversationContext:
    """Alternating bot/user turns ending with ``last_speaker``."""
    turns = []
    n = len(texts)
    for i, text in enumerate(texts):
        # Walk backwards from the final speaker so the last turn is fixed.
        if (n - 1 - i) % 2 == 0:
            speaker = last_speaker
        else:
            speaker = Speaker.BOT if last_speaker is Speaker.USER else Speaker.USER
        turns.append(Utterance(speaker=speaker, text=text, timestamp=(i + 1) * 1000))
    return ConversationContext(session_id=session_id, turns=tuple(turns),
                               max_window=max_window)


@pytest.fixture
def cfg() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture
def user_context():
    def _make(*texts: str) -> ConversationContext:
        return make_context(*texts)

    return _make
