"""HTTP process boundary for reporting sessions, models, and reports.

Artifacts live on disk: ``apps_dir`` holds one spec document per app,
``models_dir/<app_id>/`` holds ``gm.json``, ``gapm.json``, ``gepm.json``
and ``meta.json`` (produced by the build-models command), and
``reports_dir`` receives submitted reports. Events for one session are
processed strictly serially behind a per-session lock; distinct sessions
proceed in parallel against the shared read-only models.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .app_spec import AppSpec, load_app_spec
from .errors import S2REngineError
from .gui_model import GuiModel, load_model
from .lm import NgramModel
from .reports import ReportStore, report_to_dict
from .resolver import RankingParams, S2REntity
from .session import EditOp, ReportingSession, Suggestion, TextEdit
from .similarity import EmbeddingStore, load_bundled_vectors, load_vectors

ERROR_CODES = frozenset(
    {
        "unknown_app",
        "unknown_session",
        "unknown_report",
        "session_closed",
        "stale_text",
        "invalid_edit",
        "missing_artifact",
        "internal",
    }
)


class ApiError(Exception):
    def __init__(self, code: str, message: str, status: int = 400, detail=None):
        assert code in ERROR_CODES, code
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = status
        self.detail = detail


@dataclass
class ServiceConfig:
    apps_dir: Path
    models_dir: Path
    reports_dir: Path
    vectors: Path | None = None
    ui_dir: Path | None = None
    alpha: float = 0.5
    beta: float = 0.5


@dataclass
class AppBundle:
    spec: AppSpec
    gm: GuiModel
    gapm: NgramModel
    gepm: NgramModel
    gapm_sn: int
    gepm_sn: int


@dataclass
class SessionSlot:
    session: ReportingSession
    lock: threading.Lock = field(default_factory=threading.Lock)


class EditBody(BaseModel):
    op: str
    new_text: str = ""


class EventBody(BaseModel):
    full_text: str
    edit: EditBody


class SubmitBody(BaseModel):
    title: str
    description: str = ""
    expected: str = ""
    observed: str = ""


def load_app_bundle(app_path: Path, models_dir: Path) -> AppBundle:
    spec = load_app_spec(app_path)
    model_dir = models_dir / spec.app_id
    for name in ("gm.json", "gapm.json", "gepm.json", "meta.json"):
        if not (model_dir / name).is_file():
            raise ApiError(
                "missing_artifact", f"missing model artifact: {model_dir / name}", status=500
            )
    meta = json.loads((model_dir / "meta.json").read_text(encoding="utf-8"))
    return AppBundle(
        spec=spec,
        gm=load_model(model_dir / "gm.json"),
        gapm=NgramModel.load(model_dir / "gapm.json"),
        gepm=NgramModel.load(model_dir / "gepm.json"),
        gapm_sn=meta["gapm"]["sn"],
        gepm_sn=meta["gepm"]["sn"],
    )


def _entity_payload(entity: S2REntity) -> dict:
    payload = {"text": entity.s2r_text, "validated": entity.validated}
    if entity.action is not None:
        payload["action"] = {
            "a_type": entity.action.a_type,
            "screen": entity.action.element.e_screen,
            "e_type": entity.action.element.e_type,
            "e_id": entity.action.element.e_id,
            "e_text": entity.action.element.e_text,
            "params": list(entity.action.params),
        }
    return payload


def _suggestion_payload(suggestion: Suggestion) -> dict:
    return {
        "kind": suggestion.kind.value,
        "text": suggestion.text,
        "rank": suggestion.rank,
        "token": suggestion.token,
        "screenshot": suggestion.screenshot,
    }


def create_app(config: ServiceConfig) -> FastAPI:
    store = load_vectors(config.vectors) if config.vectors else load_bundled_vectors()
    params = RankingParams(alpha=config.alpha, beta=config.beta)
    bundles: dict[str, AppBundle] = {}
    for app_path in sorted(Path(config.apps_dir).glob("*.json")):
        bundle = load_app_bundle(app_path, Path(config.models_dir))
        bundles[bundle.spec.app_id] = bundle
    report_store = ReportStore(config.reports_dir)
    sessions: dict[str, SessionSlot] = {}
    sessions_guard = threading.Lock()

    app = FastAPI(title="s2r-engine", version=__version__)

    @app.exception_handler(ApiError)
    async def handle_api_error(_req: Request, exc: ApiError):
        body = {"code": exc.code, "message": exc.message}
        if exc.detail is not None:
            body["detail"] = exc.detail
        return JSONResponse(status_code=exc.status, content=body)

    @app.exception_handler(S2REngineError)
    async def handle_engine_error(_req: Request, exc: S2REngineError):
        return JSONResponse(status_code=500, content={"code": "internal", "message": str(exc)})

    def slot_of(session_id: str) -> SessionSlot:
        slot = sessions.get(session_id)
        if slot is None:
            raise ApiError("unknown_session", f"no session {session_id}", status=404)
        return slot

    @app.get("/healthz")
    def healthz():
        return {"status": "ready", "apps": sorted(bundles)}

    @app.get("/apps")
    def list_apps():
        return [
            {
                "app_id": b.spec.app_id,
                "initial_screen": b.spec.initial_screen,
                "screens": len(b.gm.screens),
                "elements": len(b.gm.elements),
            }
            for b in bundles.values()
        ]

    @app.post("/apps/{app_id}/sessions")
    def open_session(app_id: str):
        bundle = bundles.get(app_id)
        if bundle is None:
            raise ApiError("unknown_app", f"no app {app_id}", status=404)
        session = ReportingSession(
            app_id=app_id,
            gm=bundle.gm,
            gapm=bundle.gapm,
            gepm=bundle.gepm,
            store=store,
            gapm_sn=bundle.gapm_sn,
            gepm_sn=bundle.gepm_sn,
            params=params,
            report_store=report_store,
        )
        with sessions_guard:
            sessions[session.session_id] = SessionSlot(session=session)
        return {"session_id": session.session_id, "initial_screen": bundle.gm.initial_screen}

    @app.post("/sessions/{session_id}/events")
    def session_event(session_id: str, body: EventBody):
        slot = slot_of(session_id)
        try:
            op = EditOp(body.edit.op)
        except ValueError:
            raise ApiError("invalid_edit", f"unknown edit op {body.edit.op!r}")
        with slot.lock:
            session = slot.session
            if session.closed:
                raise ApiError("session_closed", "session already submitted", status=409)
            if op == EditOp.INSERT and len(body.full_text) < len(session.full_text):
                raise ApiError("stale_text", "insert shrank the text; events out of order")
            result = session.on_text_change(body.full_text, TextEdit(op=op, new_text=body.edit.new_text))
        return {
            "entities": [_entity_payload(e) for e in result.entities],
            "current_screen": result.current_screen,
            "suggestions": [_suggestion_payload(s) for s in result.suggestions],
        }

    @app.post("/sessions/{session_id}/submit")
    def session_submit(session_id: str, body: SubmitBody):
        slot = slot_of(session_id)
        with slot.lock:
            if slot.session.closed:
                raise ApiError("session_closed", "session already submitted", status=409)
            report = slot.session.submit(
                title=body.title,
                description=body.description,
                expected=body.expected,
                observed=body.observed,
            )
        return {"report_id": report.report_id}

    @app.get("/reports")
    def list_reports(app_id: str | None = None):
        return report_store.list(app_id=app_id)

    @app.get("/reports/{report_id}")
    def get_report(report_id: str):
        report = report_store.get(report_id)
        if report is None:
            raise ApiError("unknown_report", f"no report {report_id}", status=404)
        return report_to_dict(report)

    if config.ui_dir is not None and Path(config.ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
