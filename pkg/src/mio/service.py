"""HTTP + WebSocket service exposing the engine to interactive clients.

Every response carrying a timeline uses the JSON segment format
(`[{"on": true, "ms": 600}, ...]`). Key events stream over one WebSocket per
session so effects and cues are pushed back in order.
"""

from pathlib import Path

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field

from . import analytics, timing, trainer
from .decoder import Key, KeyEvent
from .errors import MalformedStream, MioError, UnsupportedCharacter
from .sessions import OutOfOrderEvent, SessionManager, UnknownSession
from .settings import Settings
from .timing import TimingConfig
from .trainer import ActivityKind


class CreateSessionRequest(BaseModel):
    unit_ms: int | None = Field(default=None, ge=50, le=1000)


class ActivityRequest(BaseModel):
    kind: str
    seed: int | None = None
    word_count: int | None = Field(default=None, ge=1, le=1000)


class KeyEventIn(BaseModel):
    t: int = Field(ge=0)
    key: str

    def to_event(self) -> KeyEvent:
        try:
            return KeyEvent(Key(self.key), self.t)
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown key {self.key!r}")


class EventBatch(BaseModel):
    events: list[KeyEventIn]


def create_app(data_dir: str | Path = "mio-data", settings: Settings | None = None) -> FastAPI:
    app = FastAPI(title="mio", version="0.1.0")
    # the web trainer is served statically, often from another origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    manager = SessionManager(data_dir, settings)
    app.state.manager = manager

    def get_session(sid: str):
        try:
            return manager.get(sid)
        except UnknownSession:
            raise HTTPException(status_code=404, detail=f"no session {sid}")

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest | None = None):
        session = manager.create(unit_ms=req.unit_ms if req else None)
        return session.snapshot()

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": manager.ids()}

    @app.get("/sessions/{sid}")
    def inspect_session(sid: str):
        return get_session(sid).snapshot()

    @app.post("/sessions/{sid}/activity")
    def enter_activity(sid: str, req: ActivityRequest):
        get_session(sid)
        try:
            kind = ActivityKind(req.kind.upper())
        except ValueError:
            raise HTTPException(status_code=422, detail=f"unknown activity {req.kind!r}")
        session, cue = manager.enter_activity(
            sid, kind, seed=req.seed, word_count=req.word_count
        )
        practice = session.practice
        return {
            "cue": cue.to_json(),
            "activity": kind.value,
            "prompt": practice.prompt,
            "prompt_count": len(practice.curriculum.prompts),
        }

    def apply_one(sid: str, ev_in: KeyEventIn) -> dict:
        try:
            return manager.apply_event(sid, ev_in.to_event())
        except UnknownSession:
            raise HTTPException(status_code=404, detail=f"no session {sid}")
        except (OutOfOrderEvent, MalformedStream) as exc:
            raise HTTPException(status_code=409, detail=str(exc))

    @app.post("/sessions/{sid}/events")
    def post_events(sid: str, batch: EventBatch):
        get_session(sid)
        results = [apply_one(sid, ev_in) for ev_in in batch.events]
        return {"results": results, "committed": get_session(sid).committed}

    @app.websocket("/sessions/{sid}/events")
    async def event_channel(websocket: WebSocket, sid: str):
        await websocket.accept()
        try:
            manager.get(sid)
        except UnknownSession:
            await websocket.send_json({"error": "not_found", "detail": f"no session {sid}"})
            await websocket.close(code=4404)
            return
        try:
            while True:
                data = await websocket.receive_json()
                try:
                    ev_in = KeyEventIn(**data)
                    result = manager.apply_event(sid, ev_in.to_event())
                except (OutOfOrderEvent, MalformedStream) as exc:
                    await websocket.send_json({"error": "conflict", "detail": str(exc)})
                    continue
                except (HTTPException, TypeError, ValueError) as exc:
                    detail = getattr(exc, "detail", str(exc))
                    await websocket.send_json({"error": "validation", "detail": str(detail)})
                    continue
                await websocket.send_json(result)
        except WebSocketDisconnect:
            return

    @app.get("/sessions/{sid}/prompt")
    def prompt_timeline(sid: str, suffix: bool | None = None):
        session = get_session(sid)
        practice = session.practice
        if practice is None:
            raise HTTPException(status_code=409, detail="session has no active activity")
        if practice.completed:
            return {"prompt": None, "completed": True, "timeline": []}
        use_suffix = practice.suffix_mode if suffix is None else suffix
        text = practice.prompt[len(practice.committed):] if use_suffix else practice.prompt
        tl = timing.compile_text(text, session.config)
        return {
            "prompt": practice.prompt,
            "committed": practice.committed,
            "suffix_applied": use_suffix,
            "timeline": tl.to_json(),
            "total_ms": tl.total_ms,
            "completed": False,
        }

    @app.get("/timeline")
    def text_timeline(text: str, unit_ms: int = 200):
        try:
            cfg = TimingConfig(unit_ms=unit_ms)
            tl = timing.compile_text(text, cfg)
        except (UnsupportedCharacter, ValueError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"text": text, "timeline": tl.to_json(), "total_ms": tl.total_ms}

    @app.get("/cues/main-screen")
    def main_screen(unit_ms: int = 200):
        tl = trainer.main_screen_cue(TimingConfig(unit_ms=unit_ms))
        return {"timeline": tl.to_json(), "total_ms": tl.total_ms}

    @app.get("/analytics")
    def analytics_summary():
        records, malformed = manager.attempt_log.read()
        summary: dict = {
            "records": len(records),
            "successes": sum(1 for r in records if r.success),
            "malformed_lines": len(malformed),
            "regression": None,
        }
        try:
            fit = analytics.learning_curve(records)
            summary["regression"] = {
                "slope": fit.slope,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "p_value": fit.p_value,
                "n": fit.n,
            }
        except MioError:
            pass
        sample = analytics.frequency_weighted_text()
        summary["throughput_cpm"] = analytics.throughput_cpm(sample, manager.settings.timing)
        return summary

    @app.get("/logs/export", response_class=PlainTextResponse)
    def export_logs():
        path = manager.attempt_log.path
        if not path.exists():
            return ""
        return path.read_text("utf-8")

    return app
