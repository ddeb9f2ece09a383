"""HTTP + WebSocket front end over the session service.

All endpoints are async and the per-session tick loops run on the same event
loop, so ticks for one session are strictly serialized. The stream socket
pushes each tick's sample using exactly the session-log line format.
"""

from __future__ import annotations

import asyncio

from fastapi import Body, FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware

from .capture import sample_to_document, sample_to_line
from .geometry import vec3
from .scene import scene_to_document
from .service import (SessionEndedError, SessionService, config_from_document,
                      control_from_document)


def create_app(service: SessionService, realtime: bool = True) -> FastAPI:
    app = FastAPI(title="sitewalk session service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    streams: dict[str, list[asyncio.Queue]] = {}
    tick_tasks: dict[str, asyncio.Task] = {}

    def _broadcast(session_id: str, item):
        for queue in streams.get(session_id, []):
            queue.put_nowait(item)

    async def _run_session(session_id: str, tick_dt: float):
        loop = asyncio.get_running_loop()
        deadline = loop.time() + tick_dt
        while service.session_status(session_id) == "active":
            try:
                sample = service.tick(session_id)
            except SessionEndedError:
                break
            _broadcast(session_id, sample_to_line(sample))
            delay = deadline - loop.time()
            deadline += tick_dt
            await asyncio.sleep(delay if delay > 0 else 0)
        _broadcast(session_id, None)

    def _fail(exc: Exception):
        if isinstance(exc, SessionEndedError):
            raise HTTPException(status_code=409, detail=str(exc))
        if isinstance(exc, KeyError):
            raise HTTPException(status_code=404, detail=str(exc.args[0]) if exc.args else "not found")
        raise HTTPException(status_code=400, detail=str(exc))

    @app.post("/sessions")
    async def create_session(payload: dict = Body(...)):
        try:
            config = config_from_document(payload)
            session_id = service.create_session(config)
        except Exception as exc:
            _fail(exc)
        if realtime:
            tick_tasks[session_id] = asyncio.create_task(
                _run_session(session_id, config.tick_dt))
        return {"id": session_id}

    @app.post("/sessions/{session_id}/control")
    async def submit_control(session_id: str, payload: dict = Body(...)):
        try:
            service.submit_control(session_id, control_from_document(payload))
        except Exception as exc:
            _fail(exc)
        return {"ok": True}

    @app.get("/sessions/{session_id}/state")
    async def session_state(session_id: str):
        try:
            sample = service.latest_sample(session_id)
        except Exception as exc:
            _fail(exc)
        return {"sample": sample_to_document(sample) if sample else None,
                "status": service.session_status(session_id)}

    @app.post("/sessions/{session_id}/end")
    async def end_session(session_id: str):
        try:
            summary = service.end_session(session_id)
        except Exception as exc:
            _fail(exc)
        task = tick_tasks.pop(session_id, None)
        if task is not None:
            task.cancel()
        _broadcast(session_id, None)
        return summary

    @app.get("/scenes")
    async def list_scenes():
        return {"scenes": service.list_scenes()}

    @app.get("/scenes/{name}")
    async def get_scene(name: str):
        try:
            scene = service.get_scene(name)
        except Exception as exc:
            _fail(exc)
        return scene_to_document(scene)

    @app.post("/mine")
    async def mine(payload: dict = Body(...)):
        try:
            model_id = service.run_mining(
                list(payload["session_ids"]),
                int(payload.get("min_support", 2)),
                int(payload.get("max_len", 4)))
        except Exception as exc:
            _fail(exc)
        return {"model_id": model_id}

    @app.get("/models/{model_id}")
    async def get_model(model_id: str):
        try:
            return service.model_document(model_id)
        except Exception as exc:
            _fail(exc)

    @app.post("/plans")
    async def make_plan(payload: dict = Body(...)):
        try:
            plan_id = service.get_guidance(
                payload["model_id"], payload["checklist_id"],
                vec3(*payload["start"]),
                int(payload.get("total_spheres", 40)))
        except Exception as exc:
            _fail(exc)
        return {"plan_id": plan_id}

    @app.get("/plans/{plan_id}")
    async def get_plan(plan_id: str):
        try:
            return service.plan_document(plan_id)
        except Exception as exc:
            _fail(exc)

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        await websocket.accept()
        queue: asyncio.Queue = asyncio.Queue()
        streams.setdefault(session_id, []).append(queue)
        try:
            while True:
                item = await queue.get()
                if item is None:
                    break
                await websocket.send_text(item)
            await websocket.close()
        except WebSocketDisconnect:
            pass
        finally:
            streams[session_id].remove(queue)

    return app
