import pytest

from amphisim.dynamics import Contact
from amphisim.errors import DomainError
from amphisim.mission import (
    Command,
    EnvGeometry,
    Environment,
    LEGAL_TRANSITIONS,
    MissionEngine,
    MissionScript,
    classify_environment,
    default_fig6_script,
    load_script,
    run_mission,
    save_script,
    script_from_dict,
    script_to_dict,
    write_mission_csv,
)

EXPECTED_SEQUENCE = [
    "on_land->on_ramp",
    "on_ramp->sinking",
    "sinking->on_floor",
    "on_floor->ascending",
    "ascending->at_surface",
]


@pytest.fixture(scope="module")
def fig6_run():
    return run_mission(default_fig6_script())


def test_transition_sequence(fig6_run):
    log, _ = fig6_run
    assert [e.detail for e in log.transitions()] == EXPECTED_SEQUENCE


def test_transitions_are_legal(fig6_run):
    log, _ = fig6_run
    for e in log.transitions():
        src, dst = e.detail.split("->")
        assert (Environment(src), Environment(dst)) in LEGAL_TRANSITIONS


def test_water_entry_time(fig6_run):
    log, _ = fig6_run
    entry = log.first_time("transition", "on_ramp->sinking")
    assert entry == pytest.approx(10.0, abs=2.0)


def test_surface_time(fig6_run):
    log, _ = fig6_run
    surfaced = log.first_time("transition", "ascending->at_surface")
    assert surfaced == pytest.approx(90.0, abs=5.0)


def test_final_halt_time(fig6_run):
    log, _ = fig6_run
    halts = [e.time_s for e in log.entries if e.kind == "command" and e.detail == "halt"]
    assert halts[-1] == pytest.approx(105.0, abs=5.0)


def test_morph_latency_logged(fig6_run):
    log, _ = fig6_run
    commanded = log.first_time("command", "expand")
    effective = log.first_time("morph_effect", "expand")
    assert effective - commanded == pytest.approx(10.0, abs=1e-6)


def test_mission_energy_total(fig6_run):
    _, snapshots = fig6_run
    assert snapshots[-1].energy_j == pytest.approx(194.0, abs=20.0)


def test_snapshot_rate(fig6_run):
    _, snapshots = fig6_run
    dts = [b.time_s - a.time_s for a, b in zip(snapshots, snapshots[1:])]
    assert all(dt == pytest.approx(1.0 / 30.0, abs=1e-9) for dt in dts)


def test_illegal_command_ignored():
    engine = MissionEngine(start="floor")
    engine.apply_command(Command.SWIM_FORWARD)  # swimming underwater is illegal
    assert engine.log.first_time("command_ignored", "swim_fwd") is not None
    assert engine.gait_mode.value == "halt"


def test_crawl_legal_on_floor():
    engine = MissionEngine(start="floor")
    engine.apply_command(Command.CRAWL_FORWARD)
    x0 = engine.x_cm
    for _ in range(240):
        engine.step()
    assert engine.x_cm - x0 == pytest.approx(0.24, abs=1e-6)


def test_surface_swim_hits_tank_wall():
    engine = MissionEngine(start="surface")
    engine.apply_command(Command.SWIM_BACKWARD)
    for _ in range(int(10.0 / engine.params.dt_s)):
        engine.step()
    g = engine.geometry
    assert engine.x_cm == pytest.approx(g.water_entry_x_cm, abs=1e-9)
    assert engine.log.first_time("wall_contact", "tank_wall") is not None


def test_classify_environment():
    g = EnvGeometry()
    assert classify_environment(False, None, 0.0, 0.0, g) is Environment.ON_LAND
    assert classify_environment(False, None, 0.0, 3.0, g) is Environment.ON_RAMP
    assert classify_environment(True, Contact.ON_FLOOR, -0.7, 8.0, g) is Environment.ON_FLOOR
    assert classify_environment(True, Contact.AT_SURFACE, 0.9, 8.0, g) is Environment.AT_SURFACE
    assert classify_environment(True, Contact.FREE_COLUMN, -0.7, 8.0, g) is Environment.SINKING
    assert classify_environment(True, Contact.FREE_COLUMN, 0.9, 8.0, g) is Environment.ASCENDING


def test_env_geometry_water_entry():
    g = EnvGeometry()
    assert g.water_entry_x_cm == pytest.approx(
        g.land_length_cm + g.ramp_length_cm * 0.9396926207859084, abs=1e-9
    )
    with pytest.raises(DomainError):
        EnvGeometry(ramp_angle_deg=95.0)
    with pytest.raises(DomainError):
        EnvGeometry(water_depth_cm=-1.0)


def test_script_validation():
    with pytest.raises(DomainError):
        MissionScript(events=((5.0, Command.HALT), (1.0, Command.HALT)))
    with pytest.raises(DomainError):
        MissionScript(events=((-1.0, Command.HALT),))
    with pytest.raises(DomainError):
        MissionScript(events=(), start="orbit")


def test_script_round_trip(tmp_path):
    script = default_fig6_script()
    data = script_to_dict(script)
    assert script_from_dict(data) == script
    path = tmp_path / "script.json"
    save_script(script, path)
    assert load_script(path) == script


def test_script_from_dict_malformed():
    with pytest.raises(DomainError):
        script_from_dict({"events": [{"t": 0.0, "cmd": "teleport"}]})
    with pytest.raises(DomainError):
        script_from_dict({})


def test_mission_csv(tmp_path, fig6_run):
    _, snapshots = fig6_run
    path = tmp_path / "mission.csv"
    write_mission_csv(snapshots, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t_s,x_cm,depth_cm,height_cm,env,energy_j"
    assert len(lines) == 1 + len(snapshots)
    assert lines[1].split(",")[4] == "on_land"
    assert lines[-1].split(",")[4] == "at_surface"
