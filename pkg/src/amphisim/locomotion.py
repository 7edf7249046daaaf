"""Fin gait patterns and kinematic speed model, calibrated to measured averages.

Speed is cadence x stride x terrain slip rather than a thrust model: the
available measurements are averaged speeds, so anything force-based would be
uncalibratable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, ModeError

LAND_SPEED_CM_S = 0.70
SWIM_SPEED_CM_S = 0.75
UNDERWATER_SPEED_CM_S = 0.24


class GaitMode(Enum):
    CRAWL = "crawl"
    SWIM = "swim"
    HALT = "halt"


class TerrainKind(Enum):
    LAND = "land"
    UNDERWATER_FLOOR = "underwater_floor"
    WATER_SURFACE = "water_surface"
    RAMP = "ramp"


@dataclass(frozen=True)
class Terrain:
    kind: TerrainKind
    ramp_angle_deg: float = 0.0

    @classmethod
    def land(cls):
        return cls(TerrainKind.LAND)

    @classmethod
    def underwater_floor(cls):
        return cls(TerrainKind.UNDERWATER_FLOOR)

    @classmethod
    def water_surface(cls):
        return cls(TerrainKind.WATER_SURFACE)

    @classmethod
    def ramp(cls, angle_deg: float):
        if not 0.0 < angle_deg < 90.0:
            raise DomainError("ramp angle must be in (0, 90) degrees")
        return cls(TerrainKind.RAMP, angle_deg)


@dataclass(frozen=True)
class GaitConfig:
    crawl_cadence_rot_s: float = 0.5
    crawl_advance_cm: float = LAND_SPEED_CM_S / 0.5          # cm per rotation pair
    swim_cadence_stroke_s: float = 1.0
    swim_advance_cm: float = SWIM_SPEED_CM_S / 1.0           # cm per stroke
    power_recovery_ratio: float = 0.5                         # power:recovery time = 1:2
    underwater_slip: float = UNDERWATER_SPEED_CM_S / LAND_SPEED_CM_S

    def __post_init__(self):
        if min(self.crawl_cadence_rot_s, self.crawl_advance_cm,
               self.swim_cadence_stroke_s, self.swim_advance_cm,
               self.power_recovery_ratio) <= 0:
            raise DomainError("gait rates and advances must be > 0")
        if not 0.0 < self.underwater_slip <= 1.0:
            raise DomainError("underwater_slip must be in (0, 1]")


@dataclass(frozen=True)
class FinCommand:
    left_angle_deg: float
    right_angle_deg: float
    mode: GaitMode


def gait_phase(t_s: float, mode: GaitMode, config: GaitConfig = GaitConfig()) -> FinCommand:
    """Ideal tracked fin angles at time t.

    Crawl: continuous alternating rotations, the right fin half a period behind.
    Swim: both fins sweep a 180 degree arc as a sawtooth whose fast half is the
    power stroke.
    """
    if t_s < 0:
        raise DomainError("t must be >= 0")
    if mode is GaitMode.HALT:
        return FinCommand(0.0, 0.0, GaitMode.HALT)
    if mode is GaitMode.CRAWL:
        left = (360.0 * config.crawl_cadence_rot_s * t_s) % 360.0
        return FinCommand(left, (left + 180.0) % 360.0, mode)

    period = 1.0 / config.swim_cadence_stroke_s
    power_fraction = config.power_recovery_ratio / (1.0 + config.power_recovery_ratio)
    phase = (t_s % period) / period
    if phase < power_fraction:
        angle = 180.0 * phase / power_fraction          # fast power stroke
    else:
        angle = 180.0 * (1.0 - phase) / (1.0 - power_fraction)  # slow recovery
    return FinCommand(angle, angle, mode)


def terrain_speed(mode: GaitMode, terrain: Terrain, config: GaitConfig = GaitConfig()) -> float:
    """Average horizontal speed in cm/s for a mode/terrain pair."""
    if mode is GaitMode.HALT:
        return 0.0
    if mode is GaitMode.SWIM:
        if terrain.kind is not TerrainKind.WATER_SURFACE:
            raise ModeError(f"swim gait is incompatible with terrain {terrain.kind.value}")
        return config.swim_cadence_stroke_s * config.swim_advance_cm
    # crawl
    if terrain.kind is TerrainKind.WATER_SURFACE:
        raise ModeError("crawl gait is incompatible with terrain water_surface")
    base = config.crawl_cadence_rot_s * config.crawl_advance_cm
    if terrain.kind is TerrainKind.UNDERWATER_FLOOR:
        return base * config.underwater_slip
    if terrain.kind is TerrainKind.RAMP:
        # Horizontal component of the along-slope land speed.
        return base * math.cos(math.radians(terrain.ramp_angle_deg))
    return base


def advance(
    position_cm: float,
    mode: GaitMode,
    terrain: Terrain,
    dt_s: float,
    config: GaitConfig = GaitConfig(),
    direction: int = 1,
) -> float:
    """Position after dt at the terrain speed; direction -1 moves backward."""
    if dt_s <= 0:
        raise DomainError("dt must be > 0")
    if mode is GaitMode.HALT:
        return position_cm
    return position_cm + direction * terrain_speed(mode, terrain, config) * dt_s
