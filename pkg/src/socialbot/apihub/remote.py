"""HTTP source adapter: point a source role at a real engine.

Upstreams speak ``GET <base>/fetch?q=...`` returning
``[{"title": ..., "url": ..., "content": ...}, ...]``. Base URLs come from
``SOCIALBOT_SOURCE_<KIND>_URL`` environment variables; roles without one
keep their bundled local implementation.
"""

from __future__ import annotations

import os

import httpx

from socialbot.apihub.types import Document, SourceClient
from socialbot.core.clients import KnowledgeSource

ENV_TEMPLATE = "SOCIALBOT_SOURCE_{kind}_URL"


class HttpSourceClient:
    def __init__(self, kind: KnowledgeSource, base_url: str,
                 client: httpx.Client | None = None):
        self.kind = kind
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client()

    def fetch(self, query: str, deadline: float) -> list[Document]:
        response = self._client.get(
            f"{self.base_url}/fetch", params={"q": query}, timeout=deadline
        )
        response.raise_for_status()
        return [
            Document(
                source=self.kind,
                title=str(item.get("title", "")),
                url=str(item.get("url", "")),
                content=str(item["content"]),
            )
            for item in response.json()
        ]


def sources_from_env(
    defaults: dict[KnowledgeSource, SourceClient],
    env: dict[str, str] | None = None,
) -> dict[KnowledgeSource, SourceClient]:
    """Overlay HTTP adapters onto ``defaults`` for any configured role."""
    environ = os.environ if env is None else env
    wired: dict[KnowledgeSource, SourceClient] = dict(defaults)
    for kind in KnowledgeSource:
        base_url = environ.get(ENV_TEMPLATE.format(kind=kind.name))
        if base_url:
            wired[kind] = HttpSourceClient(kind, base_url)
    return wired
