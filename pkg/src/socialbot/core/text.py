"""Tokenisation and sentence-splitting helpers used across the pipeline."""

from __future__ import annotations

import re

_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:'[A-Za-z]+)?")
_SENTENCE_END_RE = re.compile(r"[.!?]+")

WH_WORDS = frozenset(
    {"what", "who", "whom", "whose", "when", "where", "why", "which", "how"}
)

AUX_WORDS = frozenset(
    {
        "is", "are", "am", "was", "were", "do", "does", "did",
        "can", "could", "will", "would", "shall", "should",
        "may", "might", "must", "have", "has", "had",
    }
)


def tokenize(text: str) -> list[str]:
    """Word tokens in order, keeping internal apostrophes (``what's``)."""
    return _WORD_RE.findall(text)


def lower_tokens(text: str) -> list[str]:
    return [t.lower() for t in tokenize(text)]


def normalize_phrase(text: str) -> str:
    """Lowercased, punctuation-stripped, whitespace-collapsed form for matching."""
    tokens = [t.replace("'", "") for t in lower_tokens(text)]
    return " ".join(tokens)


def sentence_spans(text: str) -> list[tuple[int, int]]:
    """Character spans of sentences in ``text``, terminators included.

    Spans cover the trimmed sentence content so that ``text[a:b]`` round-trips.
    """
    spans: list[tuple[int, int]] = []
    start = 0
    for match in _SENTENCE_END_RE.finditer(text):
        end = match.end()
        segment = text[start:end]
        stripped = segment.strip()
        if stripped:
            lead = len(segment) - len(segment.lstrip())
            spans.append((start + lead, end))
        start = end
    tail = text[start:]
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        trail = len(tail) - len(tail.rstrip())
        spans.append((start + lead, len(text) - trail))
    return spans


def split_sentences(text: str) -> list[str]:
    return [text[a:b] for a, b in sentence_spans(text)]


def final_sentence(text: str) -> str:
    sentences = split_sentences(text)
    return sentences[-1] if sentences else ""


def base_token(token: str) -> str:
    """Leading alphabetic part of a token, lowercased (``what's`` -> ``what``)."""
    return token.split("'", 1)[0].lower()


def is_interrogative(sentence: str) -> bool:
    """Heuristic question test: leading wh-word or auxiliary inversion."""
    stripped = sentence.strip()
    if stripped.endswith("?"):
        return True
    tokens = tokenize(stripped)
    if not tokens:
        return False
    head = base_token(tokens[0])
    if head in WH_WORDS:
        return True
    # Auxiliary inversion needs a subject after the auxiliary ("is it ...").
    return head in AUX_WORDS and len(tokens) >= 2


def has_digit_token(text: str) -> bool:
    return any(any(ch.isdigit() for ch in tok) for tok in tokenize(text))
