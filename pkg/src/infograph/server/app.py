"""REST + server-push API over the session store.

Endpoints:
    POST /sessions                      create a session
    GET  /sessions/{id}                 full session state
    POST /sessions/{id}/messages        chat turn {text}
    POST /sessions/{id}/canvas          canvas op {op, ...}
    POST /sessions/{id}/layout/apply    {resource_id}
    GET  /sessions/{id}/export.svg      rendered document
    GET  /sessions/{id}/events          progress events (SSE-style stream)

Errors are JSON {code, message, detail}. Config via GM_DATA_DIR / GM_PORT.
"""

from __future__ import annotations

import json
import os

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response, StreamingResponse
from pydantic import BaseModel

from ..agent import ProviderError
from ..dsl import LayoutError
from ..model import InvariantViolation
from ..tools import BackendUnavailable, LayoutGenerationError, SchemaError, SegmentationUnavailable
from .store import (
    EngineConfig,
    InvalidOp,
    SessionNotFound,
    SessionStore,
    StorageError,
    UnknownAsset,
    UnknownResource,
)

DEFAULT_PORT = 8780

_ERROR_CODES = [
    (SessionNotFound, 404, "session_not_found"),
    (UnknownAsset, 404, "unknown_asset"),
    (UnknownResource, 404, "unknown_resource"),
    (InvalidOp, 400, "invalid_op"),
    (InvariantViolation, 400, "invariant_violation"),
    (LayoutError, 400, "layout_error"),
    (SchemaError, 502, "schema_error"),
    (LayoutGenerationError, 502, "layout_generation"),
    (BackendUnavailable, 502, "backend_unavailable"),
    (SegmentationUnavailable, 501, "segmentation_unavailable"),
    (ProviderError, 502, "provider_error"),
    (StorageError, 500, "storage_error"),
]


class MessageIn(BaseModel):
    text: str


class CanvasOpIn(BaseModel):
    op: str
    payload: dict = {}


class ApplyLayoutIn(BaseModel):
    resource_id: str


def create_app(store: SessionStore | None = None) -> FastAPI:
    if store is None:
        store = SessionStore(os.environ.get("GM_DATA_DIR", "gm_data"), EngineConfig())

    app = FastAPI(title="infograph", version="0.1.0")
    app.state.store = store

    def error_response(exc: Exception) -> JSONResponse:
        for etype, status, code in _ERROR_CODES:
            if isinstance(exc, etype):
                return JSONResponse(
                    status_code=status,
                    content={"code": code, "message": str(exc), "detail": exc.__class__.__name__},
                )
        raise exc

    @app.exception_handler(Exception)
    async def _handle(request: Request, exc: Exception):  # pragma: no cover - safety net
        return error_response(exc)

    @app.post("/sessions")
    def create_session():
        session = store.create_session()
        return store.session_json(session.id)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            return store.session_json(session_id)
        except Exception as exc:
            return error_response(exc)

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageIn):
        try:
            return store.post_message(session_id, body.text)
        except Exception as exc:
            return error_response(exc)

    @app.post("/sessions/{session_id}/canvas")
    def canvas_op(session_id: str, body: CanvasOpIn):
        try:
            diff = store.canvas_op(session_id, body.op, body.payload)
            return {"diff": diff, "document": store.session_json(session_id)["document"]}
        except Exception as exc:
            return error_response(exc)

    @app.post("/sessions/{session_id}/layout/apply")
    def apply_layout(session_id: str, body: ApplyLayoutIn):
        try:
            diff = store.apply_layout_resource(session_id, body.resource_id)
            return {"diff": diff, "document": store.session_json(session_id)["document"]}
        except Exception as exc:
            return error_response(exc)

    @app.get("/sessions/{session_id}/export.svg")
    def export_svg(session_id: str):
        try:
            svg = store.export_svg(session_id)
        except Exception as exc:
            return error_response(exc)
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/events")
    def events(session_id: str, since: int = 0, wait: float = 0.0):
        try:
            store.get(session_id)
        except Exception as exc:
            return error_response(exc)

        def stream():
            events = store.events_since(session_id, since, wait=wait)
            for i, event in enumerate(events, start=since):
                yield f"id: {i}\ndata: {json.dumps(event)}\n\n"

        return StreamingResponse(stream(), media_type="text/event-stream")

    _mount_ui(app)
    return app


def _mount_ui(app: FastAPI) -> None:
    """Serve the built web UI at /ui when a frontend build is present."""
    from pathlib import Path

    from fastapi.staticfiles import StaticFiles

    ui_dir = Path(os.environ.get("GM_UI_DIR", "frontend"))
    if (ui_dir / "index.html").exists():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")


def main() -> None:  # pragma: no cover - process entry point
    import uvicorn

    port = int(os.environ.get("GM_PORT", DEFAULT_PORT))
    uvicorn.run(create_app(), host="127.0.0.1", port=port)


if __name__ == "__main__":  # pragma: no cover
    main()
