"""Extractive knowledge selection: best sentence across the document set.

Each sentence is scored by IDF-weighted token overlap with the query, with
document frequencies computed over the whole set, so a sentence's score is
conditioned on every document rather than its own alone. The winning span
records exactly where it came from.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from socialbot.core.text import lower_tokens, sentence_spans
from socialbot.core.wordlists import stopwords


class NoSpanError(LookupError):
    """Every candidate sentence scored zero against the query."""


@dataclass(frozen=True, slots=True)
class KnowledgeSpan:
    text: str
    document_index: int
    score: float
    char_range: tuple[int, int]


def _query_terms(query: str) -> set[str]:
    return {t for t in lower_tokens(query) if t not in stopwords()}


def extract_knowledge(documents: list[str], query: str, k: int) -> KnowledgeSpan:
    """Best-matching sentence among the first ``k`` documents."""
    if not documents:
        raise ValueError("documents must be non-empty")
    if k < 1:
        raise ValueError("k must be >= 1")
    docs = documents[:k]
    terms = _query_terms(query)
    if not terms:
        raise NoSpanError(query)

    doc_tokens = [set(lower_tokens(doc)) for doc in docs]
    n_docs = len(docs)
    idf: dict[str, float] = {}
    for term in terms:
        df = sum(1 for tokens in doc_tokens if term in tokens)
        idf[term] = math.log(1.0 + n_docs / df) if df else 0.0

    best: KnowledgeSpan | None = None
    for index, doc in enumerate(docs):
        for start, end in sentence_spans(doc):
            sentence_tokens = set(lower_tokens(doc[start:end]))
            score = sum(idf[t] for t in terms if t in sentence_tokens)
            if score <= 0.0:
                continue
            if best is None or score > best.score:
                best = KnowledgeSpan(
                    text=doc[start:end],
                    document_index=index,
                    score=score,
                    char_range=(start, end),
                )
    if best is None:
        raise NoSpanError(query)
    return best
