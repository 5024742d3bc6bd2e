"""Deadline-bounded concurrent fan-out to the four knowledge sources.

All sources are dispatched at once and collected against a single absolute
deadline. Two shortcuts keep latency down: the web search is never awaited
once the QA service has answered, and web results hosted on a Wikipedia
domain are dropped because the introductions source already covers them.
Sources that miss the deadline simply contribute nothing.
"""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import Future, ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from typing import Callable

from socialbot.apihub.cache import SearchCache
from socialbot.apihub.types import (
    AggregatedResults,
    Document,
    SOURCE_ORDER,
    SourceClient,
    empty_per_source,
)
from socialbot.core.clients import KnowledgeSource
from socialbot.core.config import PipelineConfig

logger = logging.getLogger(__name__)

_FULL_QUERY_SOURCES = (KnowledgeSource.EVI, KnowledgeSource.WEB)


class ApiHub:
    """Aggregates the prioritized sources behind one ``search`` call."""

    def __init__(
        self,
        sources: dict[KnowledgeSource, SourceClient] | None = None,
        cache: SearchCache | None = None,
        clock: Callable[[], float] = time.time,
    ) -> None:
        self.sources = sources or {}
        self.cache = cache or SearchCache(clock=clock)
        self.clock = clock
        self._counter_lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        self.source_timeouts: dict[KnowledgeSource, int] = {k: 0 for k in SOURCE_ORDER}
        self.source_errors: dict[KnowledgeSource, int] = {k: 0 for k in SOURCE_ORDER}

    def hit_rate(self) -> float:
        total = self.hits + self.misses
        return self.hits / total if total else 0.0

    def search(self, query: str, keyword_query: str, cfg: PipelineConfig) -> AggregatedResults:
        if not query.strip():
            raise ValueError("query must be non-empty")
        started = time.monotonic()

        cached = self.cache.lookup(query)
        if cached is not None:
            with self._counter_lock:
                self.hits += 1
            return AggregatedResults(
                per_source=cached.per_source,
                ordering=cached.ordering,
                cache_hit=True,
                elapsed=time.monotonic() - started,
            )
        with self._counter_lock:
            self.misses += 1

        deadline_at = started + cfg.apihub_timeout
        executor = ThreadPoolExecutor(max_workers=len(SOURCE_ORDER))
        futures: dict[KnowledgeSource, Future[list[Document]]] = {}
        for kind in SOURCE_ORDER:
            client = self.sources.get(kind)
            if client is None:
                continue
            source_query = query if kind in _FULL_QUERY_SOURCES else keyword_query
            if not source_query.strip():
                continue  # keyword-requiring source with no keywords: skip
            futures[kind] = executor.submit(client.fetch, source_query, cfg.apihub_timeout)

        per_source = empty_per_source()
        if KnowledgeSource.EVI in futures:
            per_source[KnowledgeSource.EVI] = tuple(
                self._collect(KnowledgeSource.EVI, futures[KnowledgeSource.EVI], deadline_at)
            )
        qa_answered = bool(per_source[KnowledgeSource.EVI])

        for kind in (KnowledgeSource.WIKI, KnowledgeSource.NEWS):
            if kind in futures:
                per_source[kind] = tuple(self._collect(kind, futures[kind], deadline_at))

        if KnowledgeSource.WEB in futures and not qa_answered:
            web_docs = self._collect(KnowledgeSource.WEB, futures[KnowledgeSource.WEB], deadline_at)
            per_source[KnowledgeSource.WEB] = tuple(
                d for d in web_docs if not d.is_wikipedia()
            )
        executor.shutdown(wait=False)

        results = AggregatedResults(
            per_source=per_source,
            cache_hit=False,
            elapsed=time.monotonic() - started,
        )
        self.cache.insert(query, results, ttl=cfg.cache_ttl)
        return results

    def _collect(self, kind: KnowledgeSource, future: Future, deadline_at: float) -> list[Document]:
        remaining = deadline_at - time.monotonic()
        if remaining <= 0:
            with self._counter_lock:
                self.source_timeouts[kind] += 1
            return []
        try:
            return list(future.result(timeout=remaining))
        except FutureTimeout:
            with self._counter_lock:
                self.source_timeouts[kind] += 1
            return []
        except Exception as exc:
            logger.warning("source %s failed: %s", kind.value, exc)
            with self._counter_lock:
                self.source_errors[kind] += 1
            return []

    def metrics(self) -> dict:
        with self._counter_lock:
            return {
                "cache_hits": self.hits,
                "cache_misses": self.misses,
                "cache_hit_rate": self.hit_rate(),
                "source_timeouts": {k.value: v for k, v in self.source_timeouts.items()},
                "source_errors": {k.value: v for k, v in self.source_errors.items()},
            }
