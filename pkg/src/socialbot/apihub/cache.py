"""TTL cache for aggregated search results.

An entry is served only while ``now - stored_at < ttl``; at exactly the TTL
boundary it is considered expired. The storage backend is a small contract so
an external key-value store can replace the in-process dict without changing
TTL semantics.
"""

from __future__ import annotations

import hashlib
import threading
import time
from dataclasses import dataclass
from typing import Callable, Protocol, runtime_checkable

from socialbot.apihub.types import AggregatedResults


def cache_key(query: str) -> str:
    """Stable digest of the lowercased, whitespace-collapsed query."""
    if not query.strip():
        raise ValueError("query must be non-empty")
    normalized = " ".join(query.lower().split())
    return hashlib.sha256(normalized.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    results: AggregatedResults  # stored with cache_hit=False, elapsed=0
    stored_at: float
    ttl: float

    def fresh(self, now: float) -> bool:
        return now - self.stored_at < self.ttl


@runtime_checkable
class CacheStore(Protocol):
    def get(self, key: str) -> CacheEntry | None: ...

    def put(self, key: str, entry: CacheEntry) -> None: ...

    def delete(self, key: str) -> None: ...

    def keys(self) -> list[str]: ...


class MemoryCacheStore:
    """Thread-safe in-process backend: concurrent readers, last write wins."""

    def __init__(self) -> None:
        self._entries: dict[str, CacheEntry] = {}
        self._lock = threading.Lock()

    def get(self, key: str) -> CacheEntry | None:
        with self._lock:
            return self._entries.get(key)

    def put(self, key: str, entry: CacheEntry) -> None:
        with self._lock:
            self._entries[key] = entry

    def delete(self, key: str) -> None:
        with self._lock:
            self._entries.pop(key, None)

    def keys(self) -> list[str]:
        with self._lock:
            return list(self._entries)


class SearchCache:
    def __init__(self, store: CacheStore | None = None,
                 clock: Callable[[], float] = time.time) -> None:
        self.store = store or MemoryCacheStore()
        self.clock = clock

    def lookup(self, query: str) -> AggregatedResults | None:
        entry = self.store.get(cache_key(query))
        if entry is None or not entry.fresh(self.clock()):
            return None
        return entry.results

    def insert(self, query: str, results: AggregatedResults, ttl: float) -> None:
        stored = AggregatedResults(
            per_source=results.per_source,
            ordering=results.ordering,
            cache_hit=False,
            elapsed=0.0,
        )
        key = cache_key(query)
        self.store.put(key, CacheEntry(key=key, results=stored, stored_at=self.clock(), ttl=ttl))

    def evict_expired(self, now: float | None = None) -> int:
        """Drop entries at or past their TTL; returns how many were removed."""
        moment = self.clock() if now is None else now
        removed = 0
        for key in self.store.keys():
            entry = self.store.get(key)
            if entry is not None and not entry.fresh(moment):
                self.store.delete(key)
                removed += 1
        return removed
