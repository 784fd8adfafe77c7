"""HTTP service exposing the session engine under /api/v1."""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
from .brief import DesignBrief
from .engine import Engine, Session, generate_explanation
from .errors import (
    CharspaceError,
    InvalidTransitionError,
    MissingTermError,
    ValidationError,
)
from .store import SessionStore, session_to_dict


class BriefBody(BaseModel):
    brief: str
    id: Optional[str] = None


class ManualQueryBody(BaseModel):
    word: str


class PoolBody(BaseModel):
    lemmas: list[str] = Field(min_length=1)


class PhraseBody(BaseModel):
    w1: str
    w2: str


class CompleteBody(BaseModel):
    w3: str
    w4: str
    manual_w3: bool = False
    manual_w4: bool = False


def _error(status: int, code: str, message: str, detail: str = "") -> JSONResponse:
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message, "detail": detail})


def create_app(engine: Engine, store: SessionStore,
               auth_token: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="charspace", version=__version__)
    sessions: dict[str, Session] = {}

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            session = store.load(session_id)  # restart recovery
            if session is None:
                raise LookupError(session_id)
            sessions[session_id] = session
        return session

    @app.exception_handler(RequestValidationError)
    async def on_validation(request: Request, exc: RequestValidationError):
        return _error(400, "bad_request", "malformed request body", str(exc.errors()))

    @app.exception_handler(LookupError)
    async def on_lookup(request: Request, exc: LookupError):
        return _error(404, "not_found", f"unknown session {exc.args[0]!r}")

    @app.exception_handler(ValidationError)
    async def on_invalid(request: Request, exc: ValidationError):
        return _error(400, "invalid_argument", str(exc))

    @app.exception_handler(MissingTermError)
    async def on_missing_term(request: Request, exc: MissingTermError):
        return _error(400, "missing_term", str(exc))

    @app.exception_handler(InvalidTransitionError)
    async def on_transition(request: Request, exc: InvalidTransitionError):
        return _error(409, "invalid_state", str(exc))

    @app.exception_handler(CharspaceError)
    async def on_internal(request: Request, exc: CharspaceError):
        return _error(500, "internal", "internal error", str(exc))

    @app.middleware("http")
    async def check_auth(request: Request, call_next):
        if auth_token is not None and request.url.path != "/healthz":
            header = request.headers.get("authorization", "")
            if header != f"Bearer {auth_token}":
                return _error(401, "unauthorized", "missing or invalid token")
        return await call_next(request)

    @app.get("/healthz")
    def healthz():
        return {
            "status": "ok",
            "version": __version__,
            "assets": {
                "embeddings": {"source": engine.index.source_id,
                               "terms": len(engine.index), "dim": engine.index.dim},
                "graph": {"source": engine.graph.source_id, "kept": engine.graph.kept},
                "model": {"trees": len(engine.model.trees),
                          "dim": engine.model.dim},
            },
        }

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(body: BriefBody):
        session = engine.start_session(DesignBrief(text=body.brief, id=body.id))
        sessions[session.id] = session
        store.save(session)
        return {"session_id": session.id,
                "query_words": session.query_words,
                "no_query_words": session.no_query_words}

    @app.get("/api/v1/sessions/{session_id}")
    def get_session_view(session_id: str):
        return session_to_dict(get_session(session_id))

    def _mutate(session_id: str, fn):
        session = get_session(session_id)
        with store.lock(session_id):
            result = fn(session)
            store.save(session)
        return result

    @app.post("/api/v1/sessions/{session_id}/w1-offers")
    def w1_offers(session_id: str):
        offers = _mutate(session_id, lambda s: engine.offer_w1(s))
        return {"offers": [
            {"lemma": c.lemma, "usefulness": c.usefulness, "source": c.source}
            for c in offers
        ], "empty": not offers}

    @app.post("/api/v1/sessions/{session_id}/manual-query")
    def manual_query(session_id: str, body: ManualQueryBody):
        session = get_session(session_id)
        offers = _mutate(session_id, lambda s: engine.manual_query(s, body.word))
        warning = session.events[-1].payload.get("non_adjective_warning", False)
        return {"offers": [
            {"lemma": c.lemma, "usefulness": c.usefulness, "source": c.source}
            for c in offers
        ], "non_adjective_warning": warning}

    @app.post("/api/v1/sessions/{session_id}/w1-pool")
    def w1_pool(session_id: str, body: PoolBody):
        _mutate(session_id, lambda s: engine.select_w1_pool(s, body.lemmas))
        return {"pool": body.lemmas}

    @app.post("/api/v1/sessions/{session_id}/phrase-offers")
    def phrase_offers(session_id: str):
        groups = _mutate(session_id, lambda s: engine.offer_phrases(s))
        return {"groups": [
            {"w1": w1, "phrases": [
                {"w1": p.w1, "w2": p.w2, "w2_noun": p.w2_noun,
                 "display": p.display, "similarity": p.similarity,
                 "score": p.score}
                for p in group
            ]}
            for w1, group in groups
        ]}

    @app.post("/api/v1/sessions/{session_id}/phrase")
    def select_phrase(session_id: str, body: PhraseBody):
        session = _mutate(session_id,
                          lambda s: engine.select_phrase(s, body.w1, body.w2))
        phrase = session.chosen_phrase
        return {"w1": phrase.w1, "w2": phrase.w2, "display": phrase.display}

    @app.post("/api/v1/sessions/{session_id}/antonym-offers")
    def antonym_offers(session_id: str):
        w3, w4 = _mutate(session_id, lambda s: engine.offer_antonyms(s))
        return {"w3_offers": w3, "w4_offers": w4,
                "manual_w3_required": not w3, "manual_w4_required": not w4}

    @app.post("/api/v1/sessions/{session_id}/complete")
    def complete(session_id: str, body: CompleteBody):
        cs = _mutate(session_id, lambda s: engine.complete_character_space(
            s, body.w3, body.w4, manual_w3=body.manual_w3, manual_w4=body.manual_w4))
        return {
            "w1": cs.w1, "w2": cs.w2, "w2_noun": cs.w2_noun,
            "w3": cs.w3, "w4": cs.w4,
            "quadrant_labels": list(cs.quadrant_labels),
        }

    @app.get("/api/v1/sessions/{session_id}/explanation")
    def explanation(session_id: str):
        session = get_session(session_id)
        if session.character_space is None:
            raise InvalidTransitionError("session has no completed character space")
        return {"text": generate_explanation(session.character_space)}

    return app
