"""Heuristic search-need classifier.

Scores the user's latest turn for signals that external knowledge would help
(question form, factual wh-words, entity-like tokens, recency words) against
signals that it is personal chit-chat (second-person questions, opinion and
joke markers). The additive score maps through a fixed logistic to a
probability; DO_SEARCH is the label at p >= 0.5.
"""

from __future__ import annotations

import math
import re

from socialbot.core.clients import Classification
from socialbot.core.text import (
    WH_WORDS,
    base_token,
    final_sentence,
    is_interrogative,
    split_sentences,
    tokenize,
)
from socialbot.core.types import ConversationContext

DO_SEARCH = "DO_SEARCH"
DO_NOT_SEARCH = "DO_NOT_SEARCH"

RECENCY_MARKERS = frozenset(
    {"now", "today", "tonight", "latest", "recent", "recently", "currently", "news"}
)
CHITCHAT_MARKERS = frozenset(
    {"joke", "jokes", "funny", "favorite", "favourite", "opinion", "opinions",
     "think", "feel", "believe", "guess"}
)
_PERSONAL_RE = re.compile(r"\b(?:you|your|yours)\b", re.IGNORECASE)

_QUESTION_WEIGHT = 1.5
_NOT_QUESTION_WEIGHT = -1.0
_WH_WEIGHT = 0.5
_ENTITY_WEIGHT = 1.0
_RECENCY_WEIGHT = 1.0
_PERSONAL_WEIGHT = -2.5
_CHITCHAT_WEIGHT = -1.5


def _has_entity_token(text: str) -> bool:
    """Any digit-bearing token, or a capitalised token off sentence starts."""
    for sentence in split_sentences(text):
        tokens = tokenize(sentence)
        for position, token in enumerate(tokens):
            if any(ch.isdigit() for ch in token):
                return True
            if position > 0 and token[0].isupper() and token.lower() != "i":
                return True
    return False


def do_search_score(text: str) -> float:
    last = final_sentence(text)
    lowered_tokens = [t.lower() for t in tokenize(text)]
    score = 0.0
    if text.strip().endswith("?") or is_interrogative(last):
        score += _QUESTION_WEIGHT
    else:
        score += _NOT_QUESTION_WEIGHT
    head_tokens = tokenize(last)
    if head_tokens and base_token(head_tokens[0]) in WH_WORDS:
        score += _WH_WEIGHT
    if _has_entity_token(text):
        score += _ENTITY_WEIGHT
    if any(t in RECENCY_MARKERS for t in lowered_tokens):
        score += _RECENCY_WEIGHT
    if _PERSONAL_RE.search(text):
        score += _PERSONAL_WEIGHT
    if any(t in CHITCHAT_MARKERS for t in lowered_tokens):
        score += _CHITCHAT_WEIGHT
    return score


class DoSearchClassifier:
    """ClassifierClient over the heuristic score."""

    name = "do-search-heuristic"

    def classify(self, text: str) -> Classification:
        probability = 1.0 / (1.0 + math.exp(-do_search_score(text)))
        label = DO_SEARCH if probability >= 0.5 else DO_NOT_SEARCH
        prob = probability if label == DO_SEARCH else 1.0 - probability
        return Classification(label=label, probability=prob)

    def search_probability(self, text: str) -> float:
        return 1.0 / (1.0 + math.exp(-do_search_score(text)))


def classify_do_search(context: ConversationContext,
                       classifier: DoSearchClassifier | None = None) -> Classification:
    """Classify the latest user turn of ``context``."""
    last = context.last_user_turn()
    if last is None:
        raise ValueError("context has no user turn")
    return (classifier or DoSearchClassifier()).classify(last.display_text)
