"""HTTP service: submit experiment graphs, poll runs, fetch results.

Endpoints (JSON in, JSON out; permissive CORS so a browser editor served
from anywhere can talk to it):

- GET  /devices            device catalog (types, ports, parameters)
- POST /validate           {"errors": [{"error", "pointer"}, ...]}
- POST /experiments        202 {"run_id", "status"} or 400 {"error", "pointer"}
- GET  /runs/{run_id}      {"run_id", "status", "error"}
- GET  /runs/{run_id}/results   full result payload once status is "done"

Runs execute on a small worker pool; state lives in process memory, so a
restart forgets old run ids.
"""

from __future__ import annotations

import json
import threading
import uuid
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..des import SIGNAL_KINDS
from ..devices.registry import device_catalog_json
from .graph_io import validate_and_parse
from .runner import run_experiment

DEFAULT_BIND = "127.0.0.1:8000"


def _error_response(status: int, message: str, pointer: str = "", errors=None) -> JSONResponse:
    body = {"error": message, "pointer": pointer}
    if errors is not None:
        body["errors"] = errors
    return JSONResponse(body, status_code=status)


class _RunRegistry:
    """Thread-safe in-memory run table backed by a two-worker pool."""

    def __init__(self, max_workers: int = 2):
        self._lock = threading.Lock()
        self._runs: dict[str, dict] = {}
        self._executor = ThreadPoolExecutor(max_workers=max_workers)

    def submit(self, spec) -> str:
        run_id = uuid.uuid4().hex
        with self._lock:
            self._runs[run_id] = {"status": "queued", "error": None, "results": None}
        self._executor.submit(self._execute, run_id, spec)
        return run_id

    def _execute(self, run_id: str, spec) -> None:
        with self._lock:
            self._runs[run_id]["status"] = "running"
        try:
            results = run_experiment(spec, run_id=run_id)
        except Exception as exc:
            with self._lock:
                self._runs[run_id].update(status="error", error=str(exc))
            return
        with self._lock:
            self._runs[run_id].update(status="done", results=results)

    def status(self, run_id: str) -> dict | None:
        with self._lock:
            run = self._runs.get(run_id)
            if run is None:
                return None
            return {"run_id": run_id, "status": run["status"], "error": run["error"]}

    def results(self, run_id: str):
        with self._lock:
            run = self._runs.get(run_id)
            if run is None:
                return None, None
            return run["status"], run["results"]


async def _read_json(request: Request):
    try:
        return await request.json(), None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        return None, _error_response(400, f"request body is not valid JSON: {exc}")


def create_app() -> FastAPI:
    app = FastAPI(title="qsim")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = _RunRegistry()
    app.state.registry = registry

    @app.get("/devices")
    def devices():
        # the kind forest rides along so clients can mirror the subtype rule
        kinds = [
            {"name": k.name, "parent": k.parent.name if k.parent else None}
            for k in SIGNAL_KINDS.values()
        ]
        return {"devices": device_catalog_json(), "signal_kinds": kinds}

    @app.post("/validate")
    async def validate(request: Request):
        obj, err = await _read_json(request)
        if err is not None:
            return err
        errors, _ = validate_and_parse(obj)
        return {"errors": errors}

    @app.post("/experiments")
    async def submit(request: Request):
        obj, err = await _read_json(request)
        if err is not None:
            return err
        errors, spec = validate_and_parse(obj)
        if errors:
            first = errors[0]
            return _error_response(400, first["error"], first["pointer"], errors)
        run_id = registry.submit(spec)
        return JSONResponse({"run_id": run_id, "status": "queued"}, status_code=202)

    @app.get("/runs/{run_id}")
    def run_status(run_id: str):
        status = registry.status(run_id)
        if status is None:
            return _error_response(404, f"unknown run {run_id!r}")
        return status

    @app.get("/runs/{run_id}/results")
    def run_results(run_id: str):
        status, results = registry.results(run_id)
        if status is None:
            return _error_response(404, f"unknown run {run_id!r}")
        if status == "error":
            return _error_response(409, f"run {run_id} failed: see /runs/{run_id}")
        if status != "done":
            return _error_response(409, f"run {run_id} is {status}, results not ready")
        return results.to_json_dict()

    return app


def parse_bind(bind: str) -> tuple[str, int]:
    host, sep, port = bind.rpartition(":")
    if not sep or not host or not port.isdigit():
        raise ValueError(f"bind must look like host:port, got {bind!r}")
    return host, int(port)


def serve(bind: str = DEFAULT_BIND) -> None:
    import uvicorn

    host, port = parse_bind(bind)
    uvicorn.run(create_app(), host=host, port=port, log_level="info")
