"""Standalone search-aggregation HTTP app (the gateway also mounts /search)."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from socialbot.apihub.hub import ApiHub
from socialbot.apihub.keywords import EmptyKeywordsError, keywordize
from socialbot.core.config import PipelineConfig


def create_app(hub: ApiHub, cfg: PipelineConfig | None = None) -> FastAPI:
    cfg = cfg or PipelineConfig()
    app = FastAPI(title="socialbot apihub", version="0.1.0")

    @app.get("/search")
    def search(q: str = Query(min_length=1), kq: str | None = None) -> dict:
        if kq is None:
            try:
                kq = keywordize(q)
            except EmptyKeywordsError:
                kq = ""
        return hub.search(q, kq, cfg).as_dict()

    @app.get("/metrics")
    def metrics() -> dict:
        return hub.metrics()

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    return app
