"""HTTP surface: conversation API, search endpoint, health and metrics."""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from socialbot.apihub.keywords import EmptyKeywordsError, keywordize
from socialbot.gateway.service import GatewayService


class TurnRequest(BaseModel):
    text: str = Field(min_length=1)


class SessionCreateRequest(BaseModel):
    session_id: str | None = None


def create_app(service: GatewayService, frontend_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="socialbot gateway", version="0.1.0")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/metrics")
    def metrics() -> dict:
        return service.metrics_snapshot()

    @app.post("/sessions")
    def create_session(body: SessionCreateRequest | None = None) -> dict:
        record = service.create_session(body.session_id if body else None)
        return {"session_id": record.session_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        record = service.load_session(session_id)
        if record is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return record.as_dict()

    @app.get("/sessions/{session_id}/events")
    def get_events(session_id: str) -> list[dict]:
        return service.store.events(session_id)

    @app.post("/sessions/{session_id}/turns")
    def post_turn(session_id: str, body: TurnRequest, debug: int = Query(default=0)) -> dict:
        try:
            response = service.handle_turn(session_id, body.text, debug=bool(debug))
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return response.as_dict()

    @app.get("/search")
    def search(q: str = Query(min_length=1), kq: str | None = None) -> dict:
        hub = service.pipeline.hub
        if hub is None:
            raise HTTPException(status_code=503, detail="no search hub configured")
        if kq is None:
            try:
                kq = keywordize(q)
            except EmptyKeywordsError:
                kq = ""
        results = hub.search(q, kq, service.cfg)
        return results.as_dict()

    @app.exception_handler(Exception)
    def unhandled(request, exc):  # pragma: no cover - fastapi wiring
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    static_dir = Path(frontend_dir) if frontend_dir else None
    if static_dir and static_dir.is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webchat")

    return app
