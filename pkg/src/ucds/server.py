"""Loopback HTTP API over a ReviewSession, plus the static review UI."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, File, Request, UploadFile
from fastapi.responses import HTMLResponse, JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from .errors import (
    AlreadySubmitted,
    IndexOutOfRange,
    NoSubmissionTarget,
    OversizedExport,
    ParserError,
    PayloadError,
    TargetUnreachable,
    UcdsError,
    UnknownChat,
)
from .session import HttpTarget, ReviewSession

_STATUS_BY_ERROR = [
    (UnknownChat, 404),
    (AlreadySubmitted, 409),
    (IndexOutOfRange, 400),
    (OversizedExport, 413),
    (TargetUnreachable, 502),
    (NoSubmissionTarget, 400),
    (ParserError, 400),
    (PayloadError, 400),
]

_FALLBACK_PAGE = """<!doctype html>
<html><head><meta charset="utf-8"><title>ucds review service</title></head>
<body><h1>ucds review service</h1>
<p>No review UI is bundled at this path. The API is live: see
<code>GET /chats</code>. Point <code>--ui-dir</code> at a built frontend
to serve the review interface here.</p></body></html>
"""


def _status_for(exc: UcdsError) -> int:
    for kind, status in _STATUS_BY_ERROR:
        if isinstance(exc, kind):
            return status
    return 400


def create_app(session: ReviewSession, ui_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="ucds review service", docs_url=None, redoc_url=None)

    @app.exception_handler(UcdsError)
    async def _ucds_error(request: Request, exc: UcdsError) -> JSONResponse:
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": exc.code, "message": str(exc)},
        )

    @app.get("/chats")
    def list_chats() -> list[dict]:
        return [summary.to_dict() for summary in session.list_chats()]

    @app.post("/chats", status_code=201)
    async def import_chat(file: UploadFile = File(...)) -> dict:
        data = await file.read()
        chat_id = session.import_bytes(data, source_name=file.filename or "upload")
        summary = next(s for s in session.list_chats() if s.chat_id == chat_id)
        return summary.to_dict()

    def _payload_response(chat_id: str) -> Response:
        return Response(
            content=session.preview_bytes(chat_id), media_type="application/json"
        )

    @app.get("/chats/{chat_id}")
    def get_chat(chat_id: str) -> Response:
        return _payload_response(chat_id)

    @app.get("/chats/{chat_id}/preview")
    def preview(chat_id: str) -> Response:
        return _payload_response(chat_id)

    @app.delete("/chats/{chat_id}/urls/{index}")
    def delete_url(chat_id: str, index: int) -> Response:
        session.delete_url(chat_id, index)
        return _payload_response(chat_id)

    @app.post("/chats/{chat_id}/submit")
    async def submit(chat_id: str, request: Request) -> dict:
        body = await request.body()
        targets = None
        if body:
            import json as _json

            try:
                parsed = _json.loads(body)
            except ValueError:
                raise PayloadError("submit body must be JSON")
            requested = parsed.get("targets")
            if requested is not None:
                configured = {
                    t.url for t in session.submission_targets if isinstance(t, HttpTarget)
                }
                unknown = [url for url in requested if url not in configured]
                if unknown:
                    raise NoSubmissionTarget(
                        f"targets not configured on this service: {unknown}"
                    )
                targets = [HttpTarget(url) for url in requested]
        receipt = session.submit(chat_id, targets=targets)
        return receipt.to_dict()

    index_file: Optional[Path] = None
    if ui_dir:
        ui_path = Path(ui_dir)
        if (ui_path / "index.html").is_file():
            index_file = ui_path / "index.html"
            app.mount("/ui", StaticFiles(directory=ui_path), name="ui")

    @app.get("/", response_class=HTMLResponse)
    def home() -> str:
        if index_file:
            return index_file.read_text(encoding="utf-8")
        return _FALLBACK_PAGE

    return app


def serve(
    session: ReviewSession,
    port: int = 8787,
    ui_dir: str | Path | None = None,
) -> None:
    """Run the service on loopback only."""
    import uvicorn

    uvicorn.run(create_app(session, ui_dir=ui_dir), host="127.0.0.1", port=port)
