"""HTTP/WebSocket surface: command path, operator intent, state, telemetry."""
from __future__ import annotations

import asyncio

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from pydantic import BaseModel

from ..runtime import CommandKind
from ..synth import IntentKind
from .session import Session

INTENT_TARGETS = {
    "LED_LEFT": IntentKind.LED_LEFT_13HZ,
    "LED_RIGHT": IntentKind.LED_RIGHT_15HZ,
    "NONE": IntentKind.NONE,
    "BLINK3": IntentKind.BLINK_TRIPLE,
}


class CommandBody(BaseModel):
    cmd: str
    seq: int


class IntentBody(BaseModel):
    target: str


def create_app(session: Session | None = None) -> FastAPI:
    app = FastAPI(title="bciwheel gateway")
    app.state.session = session

    def active() -> Session:
        if app.state.session is None:
            raise HTTPException(status_code=503, detail="no active session")
        return app.state.session

    @app.post("/command")
    def post_command(body: CommandBody):
        sess = active()
        try:
            kind = CommandKind(body.cmd)
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown command {body.cmd!r}")
        result = sess.apply_command(kind, seq=body.seq)
        if result.pop("stale"):
            raise HTTPException(status_code=409, detail="stale seq")
        return result

    @app.post("/intent")
    def post_intent(body: IntentBody):
        sess = active()
        if body.target not in INTENT_TARGETS:
            raise HTTPException(status_code=400, detail=f"unknown target {body.target!r}")
        sess.set_intent(INTENT_TARGETS[body.target])
        return {"ok": True}

    @app.get("/state")
    def get_state():
        return active().snapshot()

    @app.get("/map")
    def get_map():
        world = active().world
        return {
            "bounds": list(world.bounds),
            "obstacles": [[list(v) for v in poly] for poly in world.obstacles],
        }

    @app.websocket("/telemetry")
    async def telemetry(ws: WebSocket):
        await ws.accept()
        sess = app.state.session
        if sess is None:
            await ws.close(code=1013)
            return
        cid = sess.hub.subscribe()
        try:
            while True:
                msgs = sess.hub.drain(cid)
                for m in msgs:
                    await ws.send_json(m)
                if not msgs:
                    await asyncio.sleep(0.02)
        except WebSocketDisconnect:
            pass
        finally:
            sess.hub.unsubscribe(cid)

    return app
