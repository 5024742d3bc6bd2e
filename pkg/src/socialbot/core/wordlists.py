"""Bundled closed-class word lists (stopwords, verbs, adjectives, vocabulary).

These stand in for a statistical tagger: the keyword extractor and the query
generator treat membership in these lists as part-of-speech evidence.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources


def _load(name: str) -> frozenset[str]:
    ref = resources.files("socialbot.data.wordlists").joinpath(name)
    words = set()
    for line in ref.read_text(encoding="utf-8").splitlines():
        word = line.strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


@lru_cache(maxsize=None)
def stopwords() -> frozenset[str]:
    return _load("stopwords.txt")


@lru_cache(maxsize=None)
def verbs() -> frozenset[str]:
    return _load("verbs.txt")


@lru_cache(maxsize=None)
def adjectives() -> frozenset[str]:
    return _load("adjectives.txt")


@lru_cache(maxsize=None)
def vocabulary() -> frozenset[str]:
    """Known-English word set: the union of every bundled list."""
    return stopwords() | verbs() | adjectives() | _load("vocabulary.txt")


def adverb_like(lowered: str) -> bool:
    """-ly adverb test that leaves -ly nouns (assembly, family) alone."""
    if not lowered.endswith("ly") or len(lowered) <= 4:
        return False
    return lowered[:-2] in vocabulary()
