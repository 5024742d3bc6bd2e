"""Deterministic stand-ins for the neural clients.

The mock generator is a seeded template engine: it echoes a content word from
the user's last turn, interpolates retrieved knowledge when present, and picks
canned persona lines by hashing (seed, request), so identical inputs always
produce identical text. Tests and the simulation harness rely on that.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

from socialbot.core.clients import (
    Classification,
    ControlTag,
    GenerationRequest,
    GenerationResult,
)
from socialbot.core.lines import FINAL_BACKUP_LINE, QUESTION_LINES, STATEMENT_LINES
from socialbot.core.text import lower_tokens, normalize_phrase
from socialbot.core.wordlists import adjectives, stopwords, verbs


def _digest_index(parts: list[str], size: int) -> int:
    digest = hashlib.sha256("|".join(parts).encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "big") % size


@dataclass
class MockGenerator:
    name: str
    seed: int = 0
    delay: float = 0.0

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        started = time.monotonic()
        if self.delay:
            time.sleep(self.delay)
        last_user = request.context.last_user_turn()
        user_text = last_user.display_text if last_user else ""
        knowledge = request.knowledge.knowledge if request.knowledge else ""

        key = [str(self.seed), self.name, user_text, knowledge, request.control_tag.value]
        parts: list[str] = []
        if knowledge:
            body = knowledge.strip()
            if body and body[-1] not in ".!?":
                body += "."
            parts.append(f"From what I found, {body}")
        else:
            echo = self._echo_token(user_text)
            if echo:
                parts.append(f"You brought up {echo}.")

        if request.control_tag is ControlTag.QUESTION:
            lines = QUESTION_LINES
        elif request.control_tag is ControlTag.STATEMENT:
            lines = STATEMENT_LINES
        else:
            lines = STATEMENT_LINES + QUESTION_LINES
        parts.append(lines[_digest_index(key, len(lines))])

        return GenerationResult(
            generator=self.name,
            text=" ".join(parts),
            elapsed_ms=(time.monotonic() - started) * 1000.0,
        )

    @staticmethod
    def _echo_token(text: str) -> str | None:
        candidates = [
            t for t in lower_tokens(text)
            if t not in stopwords() and len(t) > 2
        ]
        for token in candidates:  # prefer noun-ish tokens as the echo
            if token not in verbs() and token not in adjectives():
                return token
        return candidates[0] if candidates else None


@dataclass
class FailingGenerator:
    """Always reports a crash; used for fault injection."""

    name: str
    message: str = "simulated crash"

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        return GenerationResult(generator=self.name, error=self.message)


@dataclass
class RaisingGenerator:
    """Raises instead of returning, exercising the caller's exception guard."""

    name: str

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        raise RuntimeError("simulated generator exception")


@dataclass
class SlowGenerator:
    """Sleeps past any reasonable deadline before answering."""

    name: str
    delay: float = 5.0
    text: str = "That took me a while to think about."

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        time.sleep(self.delay)
        return GenerationResult(generator=self.name, text=self.text)


@dataclass
class CannedGenerator:
    """Returns a fixed line; the final-backup role in tests and demos."""

    name: str
    text: str = FINAL_BACKUP_LINE

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        return GenerationResult(generator=self.name, text=self.text)


@dataclass
class NonsenseGenerator:
    """Emits vocabulary-free gibberish, triggering the nonsense guard."""

    name: str
    text: str = "xqzt blorp vmmp zzkrt"

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        return GenerationResult(generator=self.name, text=self.text)


@dataclass
class KeywordClassifier:
    """Keyword-table classifier: first label whose keyword list hits wins.

    ``table`` maps label -> phrases; phrases are matched as substrings of the
    lowercased input. The fallback label is returned at base probability when
    nothing hits.
    """

    name: str
    table: dict[str, tuple[str, ...]]
    fallback: str = "NONE"
    hit_probability: float = 0.9
    fallback_probability: float = 0.6

    def classify(self, text: str) -> Classification:
        lowered = normalize_phrase(text)
        for label, phrases in self.table.items():
            if any(phrase in lowered for phrase in phrases):
                return Classification(label=label, probability=self.hit_probability)
        return Classification(label=self.fallback, probability=self.fallback_probability)


def default_disengagement_classifier() -> KeywordClassifier:
    """Heuristic stand-in for a conversation-disengagement model.

    Only the three terminating labels matter to the loop; everything else maps
    to ENGAGED.
    """
    return KeywordClassifier(
        name="disengagement-heuristic",
        table={
            "USER_REQUEST_STOP": (
                "please stop", "stop talking", "be quiet", "goodbye", "bye now",
                "end the conversation",
            ),
            "USER_INITIATED_TOPIC_SWITCH": (
                "something else", "change the topic", "change the subject",
                "different topic", "switch topics", "new topic",
            ),
            "USER_DISINTEREST": (
                "boring", "bored", "whatever", "who cares", "not interested",
                "do not care", "dont care",
            ),
        },
        fallback="ENGAGED",
    )


@dataclass
class ScriptedClassifier:
    """Returns canned classifications for exact texts; tests drive this."""

    name: str
    script: dict[str, Classification] = field(default_factory=dict)
    fallback: Classification = Classification(label="ENGAGED", probability=0.5)
    fail: bool = False

    def classify(self, text: str) -> Classification:
        if self.fail:
            raise RuntimeError("simulated classifier outage")
        return self.script.get(text, self.fallback)
