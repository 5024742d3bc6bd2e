"""Documents, source contracts, and the aggregate result shape."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol, runtime_checkable
from urllib.parse import urlparse

from socialbot.core.clients import KnowledgeSource

# Priority order: the QA service answers best, then web search, then the
# bundled encyclopedia introductions, then news.
SOURCE_ORDER: tuple[KnowledgeSource, ...] = (
    KnowledgeSource.EVI,
    KnowledgeSource.WEB,
    KnowledgeSource.WIKI,
    KnowledgeSource.NEWS,
)


@dataclass(frozen=True, slots=True)
class Document:
    source: KnowledgeSource
    title: str
    url: str
    content: str

    def is_wikipedia(self) -> bool:
        host = urlparse(self.url).netloc.lower()
        return host == "wikipedia.org" or host.endswith(".wikipedia.org")

    def as_dict(self) -> dict:
        return {
            "source": self.source.value,
            "title": self.title,
            "url": self.url,
            "content": self.content,
        }


@runtime_checkable
class SourceClient(Protocol):
    """One upstream knowledge service. Must honour the fetch deadline."""

    kind: KnowledgeSource

    def fetch(self, query: str, deadline: float) -> list[Document]: ...


@dataclass(frozen=True)
class AggregatedResults:
    per_source: dict[KnowledgeSource, tuple[Document, ...]]
    ordering: tuple[KnowledgeSource, ...] = SOURCE_ORDER
    cache_hit: bool = False
    elapsed: float = 0.0

    def qa_answer(self) -> str | None:
        """The short answer from the QA service, when it produced one."""
        docs = self.per_source.get(KnowledgeSource.EVI, ())
        return docs[0].content if docs else None

    def pooled_documents(self) -> list[Document]:
        """Non-QA documents in priority order, for span extraction."""
        pooled: list[Document] = []
        for kind in self.ordering:
            if kind is KnowledgeSource.EVI:
                continue
            pooled.extend(self.per_source.get(kind, ()))
        return pooled

    def total_documents(self) -> int:
        return sum(len(v) for v in self.per_source.values())

    def as_dict(self) -> dict:
        return {
            "per_source": {
                kind.value: [d.as_dict() for d in self.per_source.get(kind, ())]
                for kind in self.ordering
            },
            "ordering": [k.value for k in self.ordering],
            "cache_hit": self.cache_hit,
            "elapsed": self.elapsed,
        }


def empty_per_source() -> dict[KnowledgeSource, tuple[Document, ...]]:
    return {kind: () for kind in SOURCE_ORDER}
