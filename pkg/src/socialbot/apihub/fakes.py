"""Local source implementations: fake upstreams plus the bundled intro corpus.

The fakes double as the desk-scale production adapters. Delay and failure
knobs exist so tests can shape upstream behaviour precisely.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from importlib import resources

import yaml

from socialbot.apihub.types import Document
from socialbot.core.clients import KnowledgeSource
from socialbot.core.text import lower_tokens


def _normalize(query: str) -> str:
    return " ".join(query.lower().replace("?", " ").split())


DEFAULT_QA_ANSWERS = {
    "where is the eiffel tower": "The Eiffel Tower is in Paris, France.",
    "who wrote hamlet": "Hamlet was written by William Shakespeare.",
    "what is the largest planet": "Jupiter is the largest planet in the solar system.",
    "how tall is mount everest": "Mount Everest is 8849 meters tall.",
    "what is the capital of france": "The capital of France is Paris.",
}


@dataclass
class FakeQaSource:
    """Short-answer QA service: one canned answer per known question."""

    kind: KnowledgeSource = KnowledgeSource.EVI
    answers: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_QA_ANSWERS))
    delay: float = 0.0
    fail: bool = False

    def fetch(self, query: str, deadline: float) -> list[Document]:
        if self.delay:
            time.sleep(self.delay)
        if self.fail:
            raise RuntimeError("simulated QA outage")
        normalized = _normalize(query)
        answer = self.answers.get(normalized)
        if answer is None:
            # Phrase-form queries still answer: "eiffel tower" should hit the
            # "where is the eiffel tower" entry and vice versa.
            for key, value in self.answers.items():
                if normalized and (normalized in key or key in normalized):
                    answer = value
                    break
        if answer is None:
            return []
        return [Document(source=self.kind, title=query, url="qa://answer", content=answer)]


@dataclass
class FakeWebSource:
    """Web search returning the content of the top-3 pages for any query."""

    kind: KnowledgeSource = KnowledgeSource.WEB
    delay: float = 0.0
    fail: bool = False
    canned: list[Document] | None = None
    include_wikipedia: bool = False

    def fetch(self, query: str, deadline: float) -> list[Document]:
        if self.delay:
            time.sleep(self.delay)
        if self.fail:
            raise RuntimeError("simulated web outage")
        if self.canned is not None:
            return list(self.canned[:3])
        docs = [
            Document(
                source=self.kind,
                title=f"Result {i} for {query}",
                url=f"https://search.example.com/{i}?q={query.replace(' ', '+')}",
                content=f"Page {i} discussing {query} in general terms.",
            )
            for i in range(1, 4)
        ]
        if self.include_wikipedia:
            docs[2] = Document(
                source=self.kind,
                title=f"Wikipedia entry for {query}",
                url="https://en.wikipedia.org/wiki/" + query.replace(" ", "_"),
                content=f"Encyclopedia page about {query}.",
            )
        return docs


class WikiIntroSource:
    """Keyword lookup over the bundled introduction corpus."""

    def __init__(self, top_k: int = 2):
        self.kind = KnowledgeSource.WIKI
        self.top_k = top_k
        self.delay = 0.0
        raw = resources.files("socialbot.data").joinpath("wiki_intros.yaml").read_text("utf-8")
        self._articles = yaml.safe_load(raw)

    def fetch(self, query: str, deadline: float) -> list[Document]:
        if self.delay:
            time.sleep(self.delay)
        wanted = set(lower_tokens(query))
        if not wanted:
            return []
        scored: list[tuple[int, int, dict]] = []
        for index, article in enumerate(self._articles):
            title_tokens = set(lower_tokens(article["title"]))
            body_tokens = set(lower_tokens(article["text"]))
            score = 2 * len(wanted & title_tokens) + len(wanted & body_tokens)
            if score > 0:
                scored.append((-score, index, article))
        scored.sort()
        return [
            Document(
                source=self.kind,
                title=a["title"],
                url=a["url"],
                content=" ".join(a["text"].split()),
            )
            for _, _, a in scored[: self.top_k]
        ]


@dataclass
class FakeNewsSource:
    """Recent-events service: summarised headlines mentioning the keywords."""

    kind: KnowledgeSource = KnowledgeSource.NEWS
    delay: float = 0.0
    headlines: dict[str, str] = field(default_factory=dict)

    def fetch(self, query: str, deadline: float) -> list[Document]:
        if self.delay:
            time.sleep(self.delay)
        wanted = set(lower_tokens(query))
        docs = []
        for topic, summary in self.headlines.items():
            if set(lower_tokens(topic)) & wanted:
                docs.append(
                    Document(
                        source=self.kind,
                        title=topic,
                        url=f"news://{topic.replace(' ', '-')}",
                        content=summary,
                    )
                )
        return docs


def default_sources() -> dict[KnowledgeSource, object]:
    """The desk-scale wiring: QA and web fakes plus the real intro corpus."""
    return {
        KnowledgeSource.EVI: FakeQaSource(),
        KnowledgeSource.WEB: FakeWebSource(),
        KnowledgeSource.WIKI: WikiIntroSource(),
        KnowledgeSource.NEWS: FakeNewsSource(),
    }
