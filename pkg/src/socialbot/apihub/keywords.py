"""Keyword-query derivation: keep the nouns and the numbers.

Keyword-oriented sources (encyclopedia introductions, news) want bare topic
words, not full questions. Without a tagger we approximate "noun" as: not a
stopword, not a known verb or adjective, not an -ly adverb. Numeric tokens
and capitalised non-leading tokens always survive.
"""

from __future__ import annotations

from socialbot.core.text import tokenize
from socialbot.core.wordlists import adjectives, adverb_like, stopwords, verbs


class EmptyKeywordsError(ValueError):
    """No noun-like or numeric token survived the reduction."""


def keywordize(query: str) -> str:
    if not query.strip():
        raise ValueError("query must be non-empty")
    kept: list[str] = []
    for position, token in enumerate(tokenize(query)):
        lowered = token.lower()
        if any(ch.isdigit() for ch in token):
            kept.append(token)
            continue
        if token[0].isupper() and position > 0:
            kept.append(token)
            continue
        if lowered in stopwords() or lowered in verbs() or lowered in adjectives():
            continue
        if adverb_like(lowered):
            continue
        kept.append(token)
    if not kept:
        raise EmptyKeywordsError(query)
    return " ".join(kept)
