import math

import pytest

from amphisim.errors import DomainError, ModeError
from amphisim.locomotion import (
    GaitConfig,
    GaitMode,
    Terrain,
    advance,
    gait_phase,
    terrain_speed,
)

CONFIG = GaitConfig()


def test_calibrated_terrain_speeds():
    assert terrain_speed(GaitMode.CRAWL, Terrain.land(), CONFIG) == pytest.approx(0.70, abs=1e-6)
    assert terrain_speed(GaitMode.CRAWL, Terrain.underwater_floor(), CONFIG) == pytest.approx(
        0.24, abs=1e-6
    )
    assert terrain_speed(GaitMode.SWIM, Terrain.water_surface(), CONFIG) == pytest.approx(
        0.75, abs=1e-6
    )
    assert terrain_speed(GaitMode.HALT, Terrain.land(), CONFIG) == 0.0


def test_ramp_speed_is_horizontal_component():
    expected = 0.70 * math.cos(math.radians(20.0))
    assert terrain_speed(GaitMode.CRAWL, Terrain.ramp(20.0), CONFIG) == pytest.approx(expected)


def test_incompatible_mode_terrain_pairs():
    with pytest.raises(ModeError):
        terrain_speed(GaitMode.SWIM, Terrain.land(), CONFIG)
    with pytest.raises(ModeError):
        terrain_speed(GaitMode.SWIM, Terrain.underwater_floor(), CONFIG)
    with pytest.raises(ModeError):
        terrain_speed(GaitMode.CRAWL, Terrain.water_surface(), CONFIG)


def test_ramp_angle_validation():
    with pytest.raises(DomainError):
        Terrain.ramp(0.0)
    with pytest.raises(DomainError):
        Terrain.ramp(90.0)


def test_gait_config_validation():
    with pytest.raises(DomainError):
        GaitConfig(crawl_cadence_rot_s=0.0)
    with pytest.raises(DomainError):
        GaitConfig(underwater_slip=1.5)


def test_crawl_periodicity():
    period = 1.0 / CONFIG.crawl_cadence_rot_s
    for t in (0.0, 0.125, 0.25, 0.5, 1.0, 1.75):
        a = gait_phase(t, GaitMode.CRAWL, CONFIG)
        b = gait_phase(t + period, GaitMode.CRAWL, CONFIG)
        assert abs(a.left_angle_deg - b.left_angle_deg) < 1e-9
        assert abs(a.right_angle_deg - b.right_angle_deg) < 1e-9


def test_crawl_fins_antiphase():
    for t in (0.0, 0.25, 0.5, 1.25):
        cmd = gait_phase(t, GaitMode.CRAWL, CONFIG)
        assert cmd.right_angle_deg == pytest.approx(
            (cmd.left_angle_deg + 180.0) % 360.0, abs=1e-9
        )


def test_swim_periodicity():
    period = 1.0 / CONFIG.swim_cadence_stroke_s
    for t in (0.0, 0.125, 0.25, 0.5, 0.75):
        a = gait_phase(t, GaitMode.SWIM, CONFIG)
        b = gait_phase(t + period, GaitMode.SWIM, CONFIG)
        assert abs(a.left_angle_deg - b.left_angle_deg) < 1e-9


def test_swim_power_recovery_asymmetry():
    # power:recovery = 1:2, so the sweep peaks a third of the way in
    period = 1.0 / CONFIG.swim_cadence_stroke_s
    peak_t = period / 3.0
    assert gait_phase(peak_t, GaitMode.SWIM, CONFIG).left_angle_deg == pytest.approx(
        180.0, abs=1e-6
    )
    assert gait_phase(0.0, GaitMode.SWIM, CONFIG).left_angle_deg == pytest.approx(0.0)
    # both fins sweep together while swimming
    cmd = gait_phase(0.2, GaitMode.SWIM, CONFIG)
    assert cmd.left_angle_deg == cmd.right_angle_deg


def test_swim_power_stroke_faster_than_recovery():
    eps = 1e-4
    power_rate = gait_phase(eps, GaitMode.SWIM, CONFIG).left_angle_deg / eps
    a = gait_phase(0.5, GaitMode.SWIM, CONFIG).left_angle_deg
    b = gait_phase(0.5 + eps, GaitMode.SWIM, CONFIG).left_angle_deg
    recovery_rate = abs(b - a) / eps
    assert power_rate == pytest.approx(2.0 * recovery_rate, rel=1e-3)


def test_gait_phase_halt_and_validation():
    cmd = gait_phase(3.0, GaitMode.HALT, CONFIG)
    assert cmd.left_angle_deg == 0.0 and cmd.right_angle_deg == 0.0
    with pytest.raises(DomainError):
        gait_phase(-1.0, GaitMode.CRAWL, CONFIG)


def test_advance():
    x = advance(10.0, GaitMode.CRAWL, Terrain.land(), 2.0, CONFIG)
    assert x == pytest.approx(11.4)
    x = advance(10.0, GaitMode.SWIM, Terrain.water_surface(), 2.0, CONFIG, direction=-1)
    assert x == pytest.approx(8.5)
    assert advance(10.0, GaitMode.HALT, Terrain.land(), 2.0, CONFIG) == 10.0
    with pytest.raises(DomainError):
        advance(0.0, GaitMode.CRAWL, Terrain.land(), 0.0, CONFIG)
