"""Baseline search-query generator.

Strategy: find the focal noun phrase of the last user turn. Procedural asks
("how do you ...") become a "how to ..." question; otherwise the phrase
itself is the query. Pronouns are resolved to the most recent noun phrase in
prior turns, skipping proper names when the pronoun is plural.
"""

from __future__ import annotations

import re

from socialbot.core.text import split_sentences, tokenize
from socialbot.core.types import ConversationContext, Speaker
from socialbot.core.wordlists import adjectives, adverb_like, stopwords, verbs


class EmptyQueryError(ValueError):
    """No content token survived; caller should skip the search."""


PLURAL_PRONOUNS = frozenset({"them", "they", "those", "these"})
PRONOUNS = PLURAL_PRONOUNS | frozenset(
    {"it", "this", "that", "he", "she", "him", "her", "one"}
)

# Determiners and connectives allowed inside a noun phrase ("House of assembly").
_CONNECTORS = frozenset({"of", "the", "a", "an"})

_PROCEDURAL_RE = re.compile(
    r"^how\s+(?:do|does|did|can|could|would|should)\s+(?:you|i|we|one|they|someone)\s+(.+)$"
    r"|^how\s+to\s+(.+)$",
    re.IGNORECASE,
)


def _is_content(token: str, position: int) -> bool:
    lowered = token.lower()
    if lowered in PRONOUNS:
        return False
    if any(ch.isdigit() for ch in token):
        return True
    if token[0].isupper() and position > 0 and lowered != "i":
        return True
    if lowered in stopwords() or lowered in verbs() or lowered in adjectives():
        return False
    if adverb_like(lowered):
        return False
    return True


def _is_proper(token: str, position: int) -> bool:
    return token[0].isupper() and position > 0


def _phrase_runs(sentence: str) -> list[list[tuple[str, int]]]:
    """Maximal (token, position) runs of content tokens plus internal connectors."""
    tokens = tokenize(sentence)
    runs: list[list[tuple[str, int]]] = []
    current: list[tuple[str, int]] = []
    for position, token in enumerate(tokens):
        lowered = token.lower()
        if _is_content(token, position) or lowered in _CONNECTORS:
            current.append((token, position))
        else:
            if current:
                runs.append(current)
            current = []
    if current:
        runs.append(current)

    trimmed: list[list[tuple[str, int]]] = []
    for run in runs:
        while run and run[0][0].lower() in _CONNECTORS:
            run = run[1:]
        while run and run[-1][0].lower() in _CONNECTORS:
            run = run[:-1]
        if run:
            trimmed.append(run)
    return trimmed


def _last_phrase(text: str, skip_proper_only: bool) -> str | None:
    """Rightmost noun phrase in ``text``, scanning sentences last-to-first."""
    for sentence in reversed(split_sentences(text)):
        for run in reversed(_phrase_runs(sentence)):
            content = [(t, p) for t, p in run if t.lower() not in _CONNECTORS]
            if skip_proper_only and all(_is_proper(t, p) for t, p in content):
                continue
            return " ".join(t for t, _ in run)
    return None


def _resolve_antecedent(prior_turns: list[str], plural: bool) -> str | None:
    for text in reversed(prior_turns):
        phrase = _last_phrase(text, skip_proper_only=plural)
        if phrase:
            return phrase
    return None


def generate_query(context: ConversationContext) -> str:
    """Render a search query for the conversation's latest user turn."""
    last = context.last_user_turn()
    if last is None:
        raise ValueError("context has no user turn")
    last_text = last.display_text
    last_index = max(i for i, t in enumerate(context.turns) if t.speaker is Speaker.USER)
    prior = [t.display_text for t in context.turns[:last_index]]

    sentences = split_sentences(last_text)
    final = sentences[-1].rstrip("?!. ") if sentences else ""
    procedural = _PROCEDURAL_RE.match(final.strip())
    if procedural:
        remainder = procedural.group(1) or procedural.group(2)
        resolved: list[str] = []
        for token in tokenize(remainder):
            lowered = token.lower()
            if lowered in PRONOUNS:
                antecedent = _resolve_antecedent(prior, plural=lowered in PLURAL_PRONOUNS)
                if antecedent:
                    resolved.append(antecedent)
                    continue
            resolved.append(token)
        body = " ".join(resolved).strip()
        if not body:
            raise EmptyQueryError(last_text)
        return f"how to {body}?"

    phrase = _last_phrase(last_text, skip_proper_only=False)
    if phrase:
        return phrase

    # Nothing usable in the last turn: follow its pronouns into history.
    plural = any(t.lower() in PLURAL_PRONOUNS for t in tokenize(last_text))
    antecedent = _resolve_antecedent(prior, plural=plural)
    if antecedent:
        return antecedent
    raise EmptyQueryError(last_text)
