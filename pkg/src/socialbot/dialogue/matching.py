"""Intent matching: token-overlap similarity plus regex patterns.

The similarity is Jaccard overlap of lowercased content tokens (stopwords
removed; raw tokens when nothing survives, so "yes"-style intents work).
A regex pattern hit scores a full 1.0. Exactly one of LOCAL / GLOBAL / OOD
comes back for any utterance; ties go to declaration order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from socialbot.core.text import lower_tokens
from socialbot.core.types import Utterance
from socialbot.core.wordlists import stopwords
from socialbot.dialogue.trees import DialogueNode, IntentSpec


class MatchKind(enum.Enum):
    LOCAL = "local"
    GLOBAL = "global"
    OOD = "ood"


@dataclass(frozen=True)
class IntentMatch:
    kind: MatchKind
    intent: str | None = None
    child: str | None = None
    score: float = 0.0

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "intent": self.intent,
            "child": self.child,
            "score": round(self.score, 6),
        }


def _content_tokens(text: str) -> frozenset[str]:
    tokens = lower_tokens(text)
    content = frozenset(t for t in tokens if t not in stopwords())
    return content if content else frozenset(tokens)


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a or not b:
        return 0.0
    union = a | b
    return len(a & b) / len(union)


def intent_score(text: str, intent: IntentSpec) -> float:
    """Best evidence for ``intent``: max example overlap, 1.0 on pattern hit."""
    lowered = text.lower().strip()
    for pattern in intent.compiled_patterns():
        if pattern.search(lowered):
            return 1.0
    tokens = _content_tokens(text)
    best = 0.0
    for example in intent.examples:
        best = max(best, _jaccard(tokens, _content_tokens(example)))
    return best


def match_intent(
    utterance: Utterance,
    node: DialogueNode,
    global_intents: list[IntentSpec],
) -> IntentMatch:
    text = utterance.display_text

    best_local: IntentMatch | None = None
    for local in node.local_intents:
        score = intent_score(text, local.spec)
        if score >= local.spec.threshold and (best_local is None or score > best_local.score):
            best_local = IntentMatch(
                kind=MatchKind.LOCAL, intent=local.spec.name, child=local.child, score=score
            )
    if best_local is not None:
        return best_local

    best_global: IntentMatch | None = None
    for spec in global_intents:
        score = intent_score(text, spec)
        if score >= spec.threshold and (best_global is None or score > best_global.score):
            best_global = IntentMatch(kind=MatchKind.GLOBAL, intent=spec.name, score=score)
    if best_global is not None:
        return best_global

    return IntentMatch(kind=MatchKind.OOD)
