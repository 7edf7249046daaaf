import json

import pytest
from fastapi.testclient import TestClient

from amphisim.mission import Command, MissionScript, run_mission, script_to_dict
from amphisim.server import TeleopSession, create_app


def _drain_until(ws, predicate, limit=400):
    for _ in range(limit):
        msg = ws.receive_json()
        if predicate(msg):
            return msg
    raise AssertionError("expected message never arrived")


def test_design_space_csv_endpoint():
    client = TestClient(create_app())
    resp = client.get("/design-space.csv")
    assert resp.status_code == 200
    lines = resp.text.splitlines()
    assert lines[0] == "mass_g,height_cm,net_force_n"
    assert len(lines) == 1 + 61 * 61


def test_state_stream_fields():
    client = TestClient(create_app(start="floor"))
    with client.websocket_connect("/ws") as ws:
        msg = ws.receive_json()
        assert msg["type"] == "state"
        for key in ("t", "x_cm", "depth_cm", "height_cm", "fin_deg", "env",
                    "net_force_n", "energy_j", "battery_pct"):
            assert key in msg
        assert msg["env"] == "on_floor"
        assert msg["depth_cm"] == pytest.approx(-30.0, abs=1e-6)


def test_expand_from_floor_reaches_surface():
    client = TestClient(create_app(start="floor", time_scale=30.0))
    with client.websocket_connect("/ws") as ws:
        first = ws.receive_json()
        ws.send_text(json.dumps({"type": "cmd", "action": "expand"}))
        pressed_t = first["t"]
        seen = [first["env"]]

        def track(msg):
            if msg["type"] == "state" and msg["env"] != seen[-1]:
                seen.append(msg["env"])
            return msg.get("env") == "at_surface"

        surfaced = _drain_until(ws, track)
        assert seen == ["on_floor", "ascending", "at_surface"]
        assert surfaced["t"] - pressed_t <= 60.0


def test_malformed_message_then_valid_command():
    client = TestClient(create_app(start="floor"))
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_text("this is not json")
        err = _drain_until(ws, lambda m: m["type"] == "error")
        assert "malformed" in err["reason"]
        ws.send_text(json.dumps({"type": "cmd", "action": "crawl_fwd"}))
        moved = _drain_until(ws, lambda m: m["type"] == "state" and m["x_cm"] > 6.6)
        assert moved["env"] == "on_floor"


def test_unknown_action_and_type_errors():
    client = TestClient(create_app())
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_text(json.dumps({"type": "cmd", "action": "fly"}))
        err = _drain_until(ws, lambda m: m["type"] == "error")
        assert "unknown action" in err["reason"]
        ws.send_text(json.dumps({"type": "teleport"}))
        err = _drain_until(ws, lambda m: m["type"] == "error")
        assert "unknown message type" in err["reason"]


def test_halt_twice_is_idempotent():
    client = TestClient(create_app(start="floor"))
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_text(json.dumps({"type": "cmd", "action": "halt"}))
        ws.send_text(json.dumps({"type": "cmd", "action": "halt"}))
        for _ in range(5):
            msg = ws.receive_json()
            assert msg["type"] == "state"


def test_load_mission_message():
    client = TestClient(create_app(start="surface"))
    script = MissionScript(events=((0.0, Command.HALT),), start="floor", duration_s=5.0)
    with client.websocket_connect("/ws") as ws:
        ws.receive_json()
        ws.send_text(json.dumps({"type": "load_mission", "script": script_to_dict(script)}))
        reloaded = _drain_until(ws, lambda m: m["type"] == "state" and m["env"] == "on_floor")
        assert reloaded["depth_cm"] == pytest.approx(-30.0, abs=1e-6)


def test_live_batch_equivalence():
    script = MissionScript(
        events=(
            (0.0, Command.CRAWL_FORWARD),
            (20.0, Command.HALT),
            (20.0, Command.EXPAND),
        ),
        start="floor",
        duration_s=80.0,
    )
    _, batch = run_mission(script)

    session = TeleopSession(time_scale=1.0, start="floor")
    session.load_mission(script)
    live = [session.engine.snapshot()]
    while session.engine.t < script.duration_s - 1e-9:
        session.tick()
        live.append(session.engine.snapshot())

    assert len(live) == len(batch)
    for a, b in zip(live, batch):
        assert a.time_s == pytest.approx(b.time_s, abs=1e-9)
        assert abs(a.x_cm - b.x_cm) < 1e-6
        assert abs(a.depth_cm - b.depth_cm) < 1e-6
        assert abs(a.morph.height_cm - b.morph.height_cm) < 1e-6
