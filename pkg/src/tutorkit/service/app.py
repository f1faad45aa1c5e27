"""The HTTP face of the tutor: session lifecycle, messaging, views, catalog.

All bodies are JSON; all errors are ``{"code": ..., "message": ...}``.
Per-session message ordering is serialized by the store's locks; catalog
ingestion and session creation exclude each other.
"""

from __future__ import annotations

import threading

from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from tutorkit.errors import (
    EmptyPlanError,
    OutlineParseError,
    PlanDepthError,
    ProviderError,
    ScriptExhaustedError,
    SessionFinishedError,
    TopicCatalogError,
    TutorError,
    UnknownSessionError,
)
from tutorkit.service.config import ServiceConfig, build_gateway
from tutorkit.service.store import SessionStore
from tutorkit.service.topics import TopicCatalog

# Failure classes with a fixed HTTP shape, most specific first.
_ERROR_MAP: list[tuple[type[Exception], int, str]] = [
    (UnknownSessionError, 404, "unknown_session"),
    (SessionFinishedError, 409, "session_finished"),
    (TopicCatalogError, 400, "catalog_error"),
    (ScriptExhaustedError, 503, "script_exhausted"),
    (ProviderError, 502, "provider_error"),
    (OutlineParseError, 502, "course_design_failed"),
    (PlanDepthError, 502, "course_design_failed"),
    (EmptyPlanError, 502, "course_design_failed"),
    (TutorError, 500, "internal_error"),
]


class CreateSessionBody(BaseModel):
    topic: str
    difficulty: int
    variant: str = "main"


class MessageBody(BaseModel):
    text: str


class CatalogBody(BaseModel):
    csv: str


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message})


def create_app(config: ServiceConfig | None = None,
               gateway=None) -> FastAPI:
    config = config or ServiceConfig()
    config.data_dir.mkdir(parents=True, exist_ok=True)
    gateway = gateway or build_gateway(config)
    store = SessionStore(config.data_dir, gateway)
    catalog = TopicCatalog(config.data_dir)
    admission = threading.Lock()  # creation and ingestion are exclusive

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        store.recover()
        yield
        store.close()

    app = FastAPI(title="tutorkit", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.store = store
    app.state.catalog = catalog

    @app.exception_handler(TutorError)
    async def tutor_error_handler(request: Request, exc: TutorError):
        for exc_type, status, code in _ERROR_MAP:
            if isinstance(exc, exc_type):
                return _error(status, code, str(exc))
        return _error(500, "internal_error", str(exc))

    @app.exception_handler(ValueError)
    async def value_error_handler(request: Request, exc: ValueError):
        return _error(422, "validation_error", str(exc))

    @app.exception_handler(RequestValidationError)
    async def validation_handler(request: Request,
                                 exc: RequestValidationError):
        return _error(422, "validation_error", str(exc))

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionBody):
        with admission:
            summary = store.create(body.topic, body.difficulty, body.variant)
        return summary.to_dict()

    @app.post("/sessions/{session_id}/messages")
    def post_message(session_id: str, body: MessageBody):
        response = store.message(session_id, body.text)
        return response.to_dict()

    @app.get("/sessions/{session_id}/plan")
    def get_plan(session_id: str):
        return store.plan(session_id)

    @app.get("/sessions/{session_id}/transcript")
    def get_transcript(session_id: str):
        return store.transcript(session_id)

    @app.get("/topics")
    def get_topics():
        return {"topics": [entry.to_dict() for entry in catalog.entries()]}

    @app.post("/topics")
    def ingest_topics(body: CatalogBody):
        with admission:
            count = catalog.replace(body.csv)
        return {"count": count}

    return app
