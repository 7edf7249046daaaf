"""Teleoperation service: streams simulator state over a WebSocket as
newline-free JSON messages (one object per frame) and applies operator
commands at the next simulation tick in arrival order.
"""

from __future__ import annotations

import asyncio
import json
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .config import AppConfig
from .hydrostatics import design_space, write_design_space_csv
from .mission import Command, MissionEngine, MissionScript, script_from_dict

TICK_RATE_HZ = 30.0

ACTION_TO_COMMAND = {
    "expand": Command.EXPAND,
    "compress": Command.COMPRESS,
    "stop_morph": Command.STOP_MORPH,
    "crawl_fwd": Command.CRAWL_FORWARD,
    "crawl_back": Command.CRAWL_BACKWARD,
    "swim_fwd": Command.SWIM_FORWARD,
    "swim_back": Command.SWIM_BACKWARD,
    "halt": Command.HALT,
}


class TeleopSession:
    """One live simulation; the tick loop is the single writer of state."""

    def __init__(
        self,
        config: Optional[AppConfig] = None,
        time_scale: float = 1.0,
        start: str = "floor",
        tick_rate_hz: float = TICK_RATE_HZ,
    ):
        self.config = config or AppConfig()
        self.time_scale = time_scale
        self.tick_rate_hz = tick_rate_hz
        self.transcript: list = []  # (sim_time_s, Command) actually applied
        self.scheduled: list = []   # (time_s, Command) from a loaded mission script
        self._scheduled_idx = 0
        self._make_engine(start=start)

    def _make_engine(self, geometry=None, start="floor", latency=None):
        cfg = self.config
        self.engine = MissionEngine(
            geometry=geometry or cfg.environment,
            params=cfg.sim_params(),
            gait=cfg.gait,
            power=cfg.power,
            command_latency_s=cfg.command_latency_s if latency is None else latency,
            start=start,
        )

    def load_mission(self, script: MissionScript):
        self.transcript = []
        self.scheduled = list(script.events)
        self._scheduled_idx = 0
        self._make_engine(
            geometry=script.geometry, start=script.start, latency=script.command_latency_s
        )

    def apply_action(self, action: str):
        cmd = ACTION_TO_COMMAND[action]
        self.transcript.append((self.engine.t, cmd))
        self.engine.apply_command(cmd)

    def handle_message(self, raw: str):
        """Returns an error dict for bad input, else None."""
        try:
            msg = json.loads(raw)
        except json.JSONDecodeError:
            return {"type": "error", "reason": "malformed JSON"}
        if not isinstance(msg, dict):
            return {"type": "error", "reason": "message must be a JSON object"}
        if msg.get("type") == "cmd":
            if msg.get("action") not in ACTION_TO_COMMAND:
                return {"type": "error", "reason": f"unknown action {msg.get('action')!r}"}
            self.apply_action(msg["action"])
            return None
        if msg.get("type") == "load_mission":
            try:
                self.load_mission(script_from_dict(msg.get("script", {})))
            except Exception as exc:
                return {"type": "error", "reason": f"bad mission script: {exc}"}
            return None
        return {"type": "error", "reason": f"unknown message type {msg.get('type')!r}"}

    def tick(self):
        """Advance sim time by time_scale / tick_rate in fixed dt steps."""
        dt = self.engine.params.dt_s
        n = max(1, int(round(self.time_scale / self.tick_rate_hz / dt)))
        for _ in range(n):
            while (
                self._scheduled_idx < len(self.scheduled)
                and self.scheduled[self._scheduled_idx][0] <= self.engine.t + 1e-9
            ):
                t, cmd = self.scheduled[self._scheduled_idx]
                self.transcript.append((self.engine.t, cmd))
                self.engine.apply_command(cmd)
                self._scheduled_idx += 1
            self.engine.step(dt)

    def state_message(self) -> dict:
        e = self.engine
        snap = e.snapshot()
        capacity = self.config.battery.capacity_j
        return {
            "type": "state",
            "t": round(snap.time_s, 6),
            "x_cm": round(snap.x_cm, 6),
            "depth_cm": round(snap.depth_cm, 6),
            "height_cm": round(snap.morph.height_cm, 6),
            "fin_deg": round(snap.morph.fin_pitch_deg, 6),
            "env": snap.environment.value,
            "net_force_n": round(snap.forces.buoyancy_n - snap.forces.weight_n, 6),
            "energy_j": round(snap.energy_j, 6),
            "battery_pct": round(100.0 * max(0.0, 1.0 - snap.energy_j / capacity), 6),
        }


def create_app(
    config: Optional[AppConfig] = None,
    time_scale: float = 1.0,
    start: str = "floor",
    frontend_dir=None,
) -> FastAPI:
    app = FastAPI(title="amphisim teleop")
    cfg = config or AppConfig()

    @app.get("/design-space.csv", response_class=PlainTextResponse)
    def design_space_csv():
        import io
        import tempfile

        grid = design_space(model=cfg.volume_model, fluid=cfg.fluid)
        with tempfile.NamedTemporaryFile("r", suffix=".csv", delete=False) as f:
            path = f.name
        write_design_space_csv(grid, path)
        text = Path(path).read_text()
        Path(path).unlink()
        return text

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket):
        await websocket.accept()
        session = TeleopSession(config=cfg, time_scale=time_scale, start=start)
        queue: asyncio.Queue = asyncio.Queue()

        async def reader():
            try:
                while True:
                    await queue.put(await websocket.receive_text())
            except (WebSocketDisconnect, RuntimeError):
                pass

        reader_task = asyncio.create_task(reader())
        loop = asyncio.get_running_loop()
        tick_wall = 1.0 / session.tick_rate_hz
        deadline = loop.time() + tick_wall
        try:
            while True:
                while not queue.empty():
                    reply = session.handle_message(queue.get_nowait())
                    if reply is not None:
                        await websocket.send_text(json.dumps(reply))
                session.tick()
                await websocket.send_text(json.dumps(session.state_message()))
                delay = deadline - loop.time()
                if delay > 0:
                    await asyncio.sleep(delay)
                    deadline += tick_wall
                else:
                    # fell behind (slow client or heavy load): resynchronize
                    deadline = loop.time() + tick_wall
                    await asyncio.sleep(0)
        except (WebSocketDisconnect, RuntimeError):
            pass
        finally:
            reader_task.cancel()

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=frontend_dir, html=True), name="frontend")
    return app


def serve(
    port: int = 8732,
    time_scale: float = 1.0,
    config: Optional[AppConfig] = None,
    start: str = "floor",
    frontend_dir=None,
):
    import uvicorn

    app = create_app(config=config, time_scale=time_scale, start=start, frontend_dir=frontend_dir)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")
