from socialbot.apihub.types import Document, AggregatedResults, SourceClient, SOURCE_ORDER
from socialbot.apihub.keywords import keywordize, EmptyKeywordsError
from socialbot.apihub.cache import cache_key, CacheEntry, SearchCache, MemoryCacheStore
from socialbot.apihub.hub import ApiHub

__all__ = [
    "Document",
    "AggregatedResults",
    "SourceClient",
    "SOURCE_ORDER",
    "keywordize",
    "EmptyKeywordsError",
    "cache_key",
    "CacheEntry",
    "SearchCache",
    "MemoryCacheStore",
    "ApiHub",
]
