"""HTTP + WebSocket surface for the operator console.

JSON request/response bodies (schemas in docs/api.md). One push channel
at /feed streams the live sensor view once per simulation tick; every
mutating endpoint publishes a frame too, so the console stays current
between runs. The simulation runs on its own thread; start/stop arrive
through the service lock and the run's command queue.
"""

from __future__ import annotations

import asyncio
import queue
import threading
import time
from dataclasses import asdict
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .engine import DEFAULT_DT, simulate
from .link import LinkParams
from .scenario import Scenario
from .service import (
    EvaluationService,
    RUNNING,
    SessionNotFound,
    SessionStateError,
    SubmissionRejected,
    TestSession,
    misaligned_message,
)
from .validation import Application


class FeedHub:
    """Fan-out of tick frames to any number of websocket subscribers."""

    def __init__(self):
        self._lock = threading.Lock()
        self._subscribers: list[queue.Queue] = []

    def subscribe(self) -> queue.Queue:
        q: queue.Queue = queue.Queue(maxsize=2048)
        with self._lock:
            self._subscribers.append(q)
        return q

    def unsubscribe(self, q: queue.Queue) -> None:
        with self._lock:
            if q in self._subscribers:
                self._subscribers.remove(q)

    def publish(self, frame: dict) -> None:
        with self._lock:
            targets = list(self._subscribers)
        for q in targets:
            try:
                q.put_nowait(frame)
            except queue.Full:
                pass  # slow consumer: drop, console re-syncs on next frame


def session_payload(session: TestSession) -> dict:
    payload = asdict(session)
    payload["verdict_banner"] = session.verdict_banner()
    payload["reason_banner"] = session.reason_banner()
    return payload


def create_app(
    service: EvaluationService,
    scenario: Scenario | None = None,
    link_params: LinkParams = LinkParams(),
    dt: float = DEFAULT_DT,
    log_dir: str | Path | None = None,
    ui_dir: str | Path | None = None,
    pace: float = 0.0,
) -> FastAPI:
    app = FastAPI(title="htrack evaluation service")
    # The console may be served from a different origin than the API.
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    hub = FeedHub()
    runs: dict[str, dict] = {}  # session id -> {"thread", "commands"}

    def status_frame() -> dict:
        aligned, misaligned, align_banner = service.alignment()
        session = None
        if service.current_id is not None:
            session = service.get_session(service.current_id)
        return {
            "t": service.sim_t,
            "blocked": sorted(service.snapshot.blocked),
            "knocked": sorted(service.snapshot.knocked),
            "aligned": aligned,
            "misaligned": misaligned,
            "message": misaligned_message(misaligned),
            "alignment_banner": align_banner,
            "banner": service.banner(),
            "gate_count": service.gate_count,
            "session_id": session.id if session else None,
            "session_status": session.status if session else None,
        }

    def publish_status() -> None:
        hub.publish(status_frame())

    @app.get("/status")
    def get_status():
        return status_frame()

    @app.post("/applications/validate")
    def validate_application_endpoint(fields: dict):
        report = service.validate(Application(**_app_fields(fields)))
        return {
            "valid": report.valid,
            "field_errors": [
                {"field": e.field, "reason": e.reason} for e in report.field_errors
            ],
        }

    @app.post("/sessions", status_code=201)
    def submit(fields: dict):
        try:
            session = service.submit_application(Application(**_app_fields(fields)))
        except SubmissionRejected as exc:
            detail = {"rejected": str(exc)}
            if exc.report is not None:
                detail["field_errors"] = [
                    {"field": e.field, "reason": e.reason} for e in exc.report.field_errors
                ]
            return JSONResponse(status_code=422, content=detail)
        publish_status()
        return session_payload(session)

    @app.post("/sessions/{session_id}/start")
    def start(session_id: str):
        try:
            session = service.start_test(session_id)
        except SessionNotFound:
            return JSONResponse(status_code=404, content={"error": session_id})
        except SessionStateError as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        if scenario is not None:
            commands: queue.Queue = queue.Queue()

            def sink(t, snapshot, gate_count, session_status):
                frame = status_frame()
                frame.update(
                    t=t,
                    blocked=sorted(snapshot.blocked),
                    knocked=sorted(snapshot.knocked),
                    gate_count=gate_count,
                    session_status=session_status,
                )
                hub.publish(frame)

            def run():
                result = simulate(
                    service.layout,
                    scenario,
                    service,
                    session_id,
                    link_params=link_params,
                    dt=dt,
                    sink=sink,
                    commands=commands,
                    pace=pace,
                )
                if log_dir is not None:
                    path = Path(log_dir) / f"{session_id}.events.log"
                    result.log.write(path)
                    service.attach_event_log(session_id, str(path))
                publish_status()

            thread = threading.Thread(target=run, daemon=True)
            runs[session_id] = {"thread": thread, "commands": commands}
            thread.start()
        publish_status()
        return session_payload(session)

    @app.post("/sessions/{session_id}/stop")
    def stop(session_id: str):
        try:
            session = service.get_session(session_id)
        except SessionNotFound:
            return JSONResponse(status_code=404, content={"error": session_id})
        run = runs.get(session_id)
        if session.status == RUNNING and run and run["thread"].is_alive():
            run["commands"].put("stop")
            for _ in range(500):
                session = service.get_session(session_id)
                if session.status != RUNNING:
                    break
                time.sleep(0.01)
        else:
            try:
                session = service.stop_test(session_id, service.sim_t)
            except SessionStateError as exc:
                return JSONResponse(status_code=409, content={"error": str(exc)})
        publish_status()
        return session_payload(session)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        try:
            return session_payload(service.get_session(session_id))
        except SessionNotFound:
            return JSONResponse(status_code=404, content={"error": session_id})

    @app.get("/sessions/{session_id}/card")
    def get_card(session_id: str):
        try:
            card = service.render_card(session_id)
        except SessionNotFound:
            return JSONResponse(status_code=404, content={"error": session_id})
        except SessionStateError as exc:
            return JSONResponse(status_code=409, content={"error": str(exc)})
        return PlainTextResponse(card)

    @app.post("/console/reset")
    def console_reset():
        session = service.reset_console()
        publish_status()
        return session_payload(session)

    @app.post("/posts/{post_id}/knock")
    def knock(post_id: str):
        try:
            service.knock_post(post_id)
        except KeyError:
            return JSONResponse(status_code=404, content={"error": post_id})
        publish_status()
        return status_frame()

    @app.post("/posts/reset")
    def reset_posts():
        service.reset_posts()
        publish_status()
        return status_frame()

    @app.websocket("/feed")
    async def feed(ws: WebSocket):
        await ws.accept()
        q = hub.subscribe()
        try:
            await ws.send_json(status_frame())
            while True:
                try:
                    frame = q.get_nowait()
                except queue.Empty:
                    await asyncio.sleep(0.02)
                    continue
                await ws.send_json(frame)
        except WebSocketDisconnect:
            pass
        finally:
            hub.unsubscribe(q)

    if ui_dir is not None:
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _app_fields(fields: dict) -> dict:
    allowed = {
        "first_name",
        "middle_name",
        "last_name",
        "address",
        "pin_code",
        "date_of_birth",
        "gender",
    }
    return {k: str(v) for k, v in fields.items() if k in allowed}
