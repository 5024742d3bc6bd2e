"""Heuristic punctuator and question detector.

A restorer service would normally do this; at desk scale a rule set covers
the cases the rest of the system depends on: terminal punctuation, question
marks for interrogatives, and sentence-initial capitalisation. The function
is idempotent, so already-clean text passes through unchanged.
"""

from __future__ import annotations

from socialbot.core.text import final_sentence, is_interrogative, sentence_spans

_TERMINALS = ".!?"


def _capitalize(sentence: str) -> str:
    for i, ch in enumerate(sentence):
        if ch.isalpha():
            return sentence[:i] + ch.upper() + sentence[i + 1 :]
        if ch.isdigit():
            break
    return sentence


def punctuate(text: str) -> str:
    """Return ``text`` with terminal punctuation and capitalised sentences.

    A final sentence with no terminator gets ``?`` when it looks
    interrogative (leading wh-word or auxiliary inversion), else ``.``.
    """
    stripped = text.strip()
    if not stripped:
        raise ValueError("cannot punctuate empty text")

    pieces: list[str] = []
    for start, end in sentence_spans(stripped):
        sentence = stripped[start:end]
        if not sentence[-1] in _TERMINALS:
            sentence = sentence.rstrip(",;: ")
            sentence += "?" if is_interrogative(sentence) else "."
        pieces.append(_capitalize(sentence))
    return " ".join(pieces)


def detect_question(punctuated: str) -> bool:
    """True iff the final sentence of already-punctuated text ends with ``?``."""
    last = final_sentence(punctuated.strip())
    return last.rstrip().endswith("?")
