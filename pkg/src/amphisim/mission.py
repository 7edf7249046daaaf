"""Scripted multi-environment missions: ramp descent, water entry, floor crawl,
buoyancy-driven ascent, surface swim.

The engine couples the horizontal gait model with the vertical dynamics under
timed operator commands, producing an event log and a 2-D trajectory. Morph
commands incur the operator-to-robot latency; locomotion commands that are
illegal for the current environment are logged as warnings and ignored,
mirroring open-loop teleoperation.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Sequence

from .dynamics import (
    Contact,
    MorphCommand,
    SimParams,
    VerticalState,
    advance_morph,
    floor_start_state,
    force_breakdown,
    net_hydrostatic_force,
    step as dynamics_step,
    surface_start_state,
)
from .energy import PowerModel
from .errors import DomainError
from .hydrostatics import ForceBreakdown, floating_draft
from .locomotion import GaitConfig, GaitMode, Terrain, terrain_speed
from .morphology import MorphState, morph_state

SNAPSHOT_RATE_HZ = 30.0


class Command(Enum):
    CRAWL_FORWARD = "crawl_fwd"
    CRAWL_BACKWARD = "crawl_back"
    SWIM_FORWARD = "swim_fwd"
    SWIM_BACKWARD = "swim_back"
    EXPAND = "expand"
    COMPRESS = "compress"
    STOP_MORPH = "stop_morph"
    HALT = "halt"


MORPH_COMMANDS = {Command.EXPAND, Command.COMPRESS, Command.STOP_MORPH}


class Environment(Enum):
    ON_LAND = "on_land"
    ON_RAMP = "on_ramp"
    SINKING = "sinking"
    ON_FLOOR = "on_floor"
    ASCENDING = "ascending"
    AT_SURFACE = "at_surface"


# Legal edges of the environment state machine.
LEGAL_TRANSITIONS = {
    (Environment.ON_LAND, Environment.ON_RAMP),
    (Environment.ON_RAMP, Environment.SINKING),
    (Environment.SINKING, Environment.ON_FLOOR),
    (Environment.ON_FLOOR, Environment.ASCENDING),
    (Environment.ASCENDING, Environment.ON_FLOOR),
    (Environment.ASCENDING, Environment.AT_SURFACE),
    (Environment.AT_SURFACE, Environment.SINKING),
}


@dataclass(frozen=True)
class EnvGeometry:
    ramp_angle_deg: float = 20.0
    ramp_length_cm: float = 6.65   # along the slope; traversed in 9.5 s at land speed
    water_depth_cm: float = 30.0
    tank_length_cm: float = 90.0
    land_length_cm: float = 0.35   # flat lead-in before the ramp

    def __post_init__(self):
        if min(self.ramp_length_cm, self.water_depth_cm, self.tank_length_cm) <= 0:
            raise DomainError("geometry lengths must be > 0")
        if not 0.0 < self.ramp_angle_deg < 90.0:
            raise DomainError("ramp angle must be in (0, 90) degrees")

    @property
    def ramp_horizontal_cm(self) -> float:
        return self.ramp_length_cm * math.cos(math.radians(self.ramp_angle_deg))

    @property
    def ramp_drop_cm(self) -> float:
        return self.ramp_length_cm * math.sin(math.radians(self.ramp_angle_deg))

    @property
    def water_entry_x_cm(self) -> float:
        return self.land_length_cm + self.ramp_horizontal_cm


@dataclass(frozen=True)
class MissionScript:
    events: tuple  # ordered (time_s, Command) pairs
    geometry: EnvGeometry = EnvGeometry()
    command_latency_s: float = 10.0
    start: str = "land"  # "land" | "floor" | "surface"
    duration_s: Optional[float] = None

    def __post_init__(self):
        times = [t for t, _ in self.events]
        if any(a > b for a, b in zip(times, times[1:])):
            raise DomainError("event times must be non-decreasing")
        if times and times[0] < 0:
            raise DomainError("first event must be at t >= 0")
        if self.start not in ("land", "floor", "surface"):
            raise DomainError("start must be land, floor or surface")

    @property
    def end_time_s(self) -> float:
        if self.duration_s is not None:
            return self.duration_s
        return self.events[-1][0] if self.events else 0.0


def default_fig6_script() -> MissionScript:
    """Ramp descent, underwater crawl, expansion, backward surface swim."""
    return MissionScript(
        events=(
            (0.0, Command.CRAWL_FORWARD),
            (40.5, Command.HALT),
            (40.5, Command.EXPAND),
            (92.0, Command.STOP_MORPH),
            (94.0, Command.SWIM_BACKWARD),
            (105.0, Command.HALT),
        ),
        duration_s=105.0,
    )


@dataclass(frozen=True)
class SimSnapshot:
    time_s: float
    x_cm: float
    depth_cm: float  # elevation above the surface while on land/ramp
    morph: MorphState
    environment: Environment
    forces: ForceBreakdown
    energy_j: float


@dataclass(frozen=True)
class LogEntry:
    time_s: float
    kind: str  # command | command_ignored | morph_effect | morph_complete | transition | end
    detail: str
    snapshot: Optional[SimSnapshot] = None


@dataclass
class EventLog:
    entries: list = field(default_factory=list)

    def add(self, time_s, kind, detail, snapshot=None):
        self.entries.append(LogEntry(time_s, kind, detail, snapshot))

    def transitions(self) -> list:
        return [e for e in self.entries if e.kind == "transition"]

    def first_time(self, kind: str, detail: str) -> Optional[float]:
        for e in self.entries:
            if e.kind == kind and e.detail == detail:
                return e.time_s
        return None


def classify_environment(
    in_water: bool,
    contact: Optional[Contact],
    net_hydro_n: float,
    x_cm: float,
    geometry: EnvGeometry,
) -> Environment:
    if not in_water:
        return Environment.ON_LAND if x_cm < geometry.land_length_cm else Environment.ON_RAMP
    if contact is Contact.ON_FLOOR:
        return Environment.ON_FLOOR
    if contact is Contact.AT_SURFACE:
        return Environment.AT_SURFACE
    return Environment.ASCENDING if net_hydro_n > 0 else Environment.SINKING


class MissionEngine:
    """Steps one robot through an environment; single-owner, stepped sequentially."""

    def __init__(
        self,
        geometry: EnvGeometry = EnvGeometry(),
        params: SimParams = SimParams(),
        gait: GaitConfig = GaitConfig(),
        power: PowerModel = PowerModel(),
        command_latency_s: float = 10.0,
        start: str = "land",
    ):
        self.geometry = geometry
        self.params = replace(
            params,
            floor_depth_cm=-geometry.water_depth_cm,
            command_latency_s=command_latency_s,
        )
        self.gait = gait
        self.power = power
        self.log = EventLog()

        self.t = 0.0
        self.gait_mode = GaitMode.HALT
        self.direction = 1
        self.active_morph = MorphCommand.STOP
        self.pending_morph: list = []  # (effective_time, MorphCommand)
        self.energy_j = 0.0

        if start == "land":
            self.in_water = False
            self.x_cm = 0.0
            self.vstate: Optional[VerticalState] = None
            geom = self.params.body.geometry
            self.morph = morph_state(geom.slider_max_cm, geom, self.params.body.bell_crank)
        else:
            self.in_water = True
            self.x_cm = geometry.water_entry_x_cm
            self.vstate = (
                floor_start_state(self.params)
                if start == "floor"
                else surface_start_state(self.params)
            )
            self.morph = self.vstate.morph
        self.environment = self._classify()
        self.log.add(self.t, "start", self.environment.value, self.snapshot())

    # -- state inspection ----------------------------------------------------

    def _net_hydro(self) -> float:
        return net_hydrostatic_force(
            self.params.body.mass_kg,
            self.morph.height_cm,
            self.params.body.volume_model,
            self.params.fluid,
        )

    def _classify(self) -> Environment:
        contact = self.vstate.contact if self.vstate else None
        return classify_environment(
            self.in_water, contact, self._net_hydro(), self.x_cm, self.geometry
        )

    def _elevation_cm(self) -> float:
        g = self.geometry
        if self.x_cm <= g.land_length_cm:
            return g.ramp_drop_cm
        ramp_progress = min(1.0, (self.x_cm - g.land_length_cm) / g.ramp_horizontal_cm)
        return g.ramp_drop_cm * (1.0 - ramp_progress)

    def snapshot(self) -> SimSnapshot:
        if self.vstate is not None:
            depth = self.vstate.depth_cm
            forces = force_breakdown(self.vstate, self.params)
        else:
            depth = self._elevation_cm()
            weight = self.params.body.mass_kg * self.params.fluid.gravity_m_s2
            forces = ForceBreakdown(weight_n=weight, buoyancy_n=0.0, contact_normal_n=weight)
        return SimSnapshot(
            time_s=self.t,
            x_cm=self.x_cm,
            depth_cm=depth,
            morph=self.morph,
            environment=self.environment,
            forces=forces,
            energy_j=self.energy_j,
        )

    # -- commands ------------------------------------------------------------

    def apply_command(self, cmd: Command):
        if cmd in MORPH_COMMANDS:
            self.log.add(self.t, "command", cmd.value, self.snapshot())
            self.pending_morph.append((self.t + self.params.command_latency_s, cmd))
            return
        if cmd is Command.HALT:
            self.gait_mode = GaitMode.HALT
            self.log.add(self.t, "command", cmd.value, self.snapshot())
            return
        wants_swim = cmd in (Command.SWIM_FORWARD, Command.SWIM_BACKWARD)
        legal_envs = (
            (Environment.AT_SURFACE,)
            if wants_swim
            else (Environment.ON_LAND, Environment.ON_RAMP, Environment.ON_FLOOR)
        )
        if self.environment not in legal_envs:
            self.log.add(self.t, "command_ignored", cmd.value, self.snapshot())
            return
        self.gait_mode = GaitMode.SWIM if wants_swim else GaitMode.CRAWL
        self.direction = -1 if cmd in (Command.CRAWL_BACKWARD, Command.SWIM_BACKWARD) else 1
        self.log.add(self.t, "command", cmd.value, self.snapshot())

    def _apply_due_morphs(self):
        due = [pc for pc in self.pending_morph if pc[0] <= self.t + 1e-9]
        for _, cmd in due:
            mapping = {
                Command.EXPAND: MorphCommand.EXPAND,
                Command.COMPRESS: MorphCommand.COMPRESS,
                Command.STOP_MORPH: MorphCommand.STOP,
            }
            self.active_morph = mapping[cmd]
            self.log.add(self.t, "morph_effect", self.active_morph.value, self.snapshot())
        self.pending_morph = [pc for pc in self.pending_morph if pc[0] > self.t + 1e-9]

    def _morphing(self) -> bool:
        if self.active_morph is MorphCommand.STOP:
            return False
        x = self.morph.slider_x_cm
        if self.active_morph is MorphCommand.EXPAND:
            return x > 0.0
        return x < self.params.body.geometry.slider_max_cm

    # -- stepping ------------------------------------------------------------

    def _terrain(self) -> Optional[Terrain]:
        env = self.environment
        if env is Environment.ON_LAND:
            return Terrain.land()
        if env is Environment.ON_RAMP:
            return Terrain.ramp(self.geometry.ramp_angle_deg)
        if env is Environment.ON_FLOOR:
            return Terrain.underwater_floor()
        if env is Environment.AT_SURFACE:
            return Terrain.water_surface()
        return None

    def _horizontal_speed(self) -> float:
        if self.gait_mode is GaitMode.HALT:
            return 0.0
        terrain = self._terrain()
        if terrain is None:
            return 0.0  # free water column: gait is ineffective
        mode_ok = (
            self.gait_mode is GaitMode.SWIM
            and terrain.kind.value == "water_surface"
            or self.gait_mode is GaitMode.CRAWL
            and terrain.kind.value != "water_surface"
        )
        if not mode_ok:
            return 0.0
        return self.direction * terrain_speed(self.gait_mode, terrain, self.gait)

    def step(self, dt: Optional[float] = None):
        dt = self.params.dt_s if dt is None else dt
        self._apply_due_morphs()
        was_morphing = self._morphing()

        # electrical energy over this step
        p = self.power.baseline_power_w
        if self.gait_mode is GaitMode.CRAWL:
            p += self.power.crawl_power_w
        elif self.gait_mode is GaitMode.SWIM:
            p += self.power.swim_power_w
        if was_morphing:
            p += self.power.actuator_power_w
        self.energy_j += p * dt

        # horizontal advance uses the environment at the start of the step
        speed = self._horizontal_speed()

        # vertical / morph update
        if self.vstate is not None:
            self.vstate = dynamics_step(self.vstate, self.params, dt, self.active_morph)
            self.morph = self.vstate.morph
        else:
            self.morph = advance_morph(self.morph, self.active_morph, self.params, dt)

        self.t += dt
        if speed:
            x = self.x_cm + speed * dt
            if self.in_water:
                g = self.geometry
                x = min(max(x, g.water_entry_x_cm), g.water_entry_x_cm + g.tank_length_cm)
                if x != self.x_cm + speed * dt and not self.log.first_time("wall_contact", "tank_wall"):
                    self.log.add(self.t, "wall_contact", "tank_wall", self.snapshot())
            self.x_cm = x

        # water entry: instantaneous drop from the ramp edge to the surface
        if not self.in_water and self.x_cm >= self.geometry.water_entry_x_cm:
            self.in_water = True
            self.vstate = VerticalState(
                self.t, 0.0, 0.0, self.morph, Contact.FREE_COLUMN
            )
            net = self._net_hydro()
            if net > 0:
                d = floating_draft(
                    self.params.body.mass_kg,
                    self.morph.height_cm,
                    self.params.body.volume_model,
                    self.params.fluid,
                )
                if d.can_float:
                    self.vstate = VerticalState(
                        self.t, -d.draft_cm, 0.0, self.morph, Contact.AT_SURFACE
                    )

        if was_morphing and not self._morphing():
            self.log.add(self.t, "morph_complete", self.active_morph.value, self.snapshot())
            self.active_morph = MorphCommand.STOP

        env = self._classify()
        if env is not self.environment:
            detail = f"{self.environment.value}->{env.value}"
            self.environment = env
            self.log.add(self.t, "transition", detail, self.snapshot())


def run_mission(
    script: MissionScript,
    params: SimParams = SimParams(),
    gait: GaitConfig = GaitConfig(),
    power: PowerModel = PowerModel(),
    snapshot_rate_hz: float = SNAPSHOT_RATE_HZ,
) -> tuple[EventLog, list[SimSnapshot]]:
    """Run a script to completion; returns the event log and sampled snapshots."""
    engine = MissionEngine(
        geometry=script.geometry,
        params=params,
        gait=gait,
        power=power,
        command_latency_s=script.command_latency_s,
        start=script.start,
    )
    dt = engine.params.dt_s
    steps_per_snap = max(1, int(round(1.0 / snapshot_rate_hz / dt)))
    n_steps = int(round(script.end_time_s / dt))
    snapshots = [engine.snapshot()]
    idx = 0
    events = list(script.events)
    for i in range(n_steps):
        while idx < len(events) and events[idx][0] <= engine.t + 1e-9:
            engine.apply_command(events[idx][1])
            idx += 1
        engine.step(dt)
        if (i + 1) % steps_per_snap == 0:
            snapshots.append(engine.snapshot())
    while idx < len(events) and events[idx][0] <= engine.t + 1e-9:
        engine.apply_command(events[idx][1])
        idx += 1
    engine.log.add(engine.t, "end", "mission_end", engine.snapshot())
    return engine.log, snapshots


# -- script and trajectory files ---------------------------------------------


def script_to_dict(script: MissionScript) -> dict:
    return {
        "events": [{"t": t, "cmd": c.value} for t, c in script.events],
        "geometry": {
            "ramp_angle_deg": script.geometry.ramp_angle_deg,
            "ramp_length_cm": script.geometry.ramp_length_cm,
            "water_depth_cm": script.geometry.water_depth_cm,
            "tank_length_cm": script.geometry.tank_length_cm,
            "land_length_cm": script.geometry.land_length_cm,
        },
        "latency_s": script.command_latency_s,
        "start": script.start,
        "duration_s": script.duration_s,
    }


def script_from_dict(data: dict) -> MissionScript:
    try:
        events = tuple((float(e["t"]), Command(e["cmd"])) for e in data["events"])
    except (KeyError, ValueError, TypeError) as exc:
        raise DomainError(f"malformed mission script: {exc}") from exc
    geometry = EnvGeometry(**data.get("geometry", {}))
    return MissionScript(
        events=events,
        geometry=geometry,
        command_latency_s=float(data.get("latency_s", 10.0)),
        start=data.get("start", "land"),
        duration_s=data.get("duration_s"),
    )


def load_script(path) -> MissionScript:
    with open(path) as f:
        return script_from_dict(json.load(f))


def save_script(script: MissionScript, path):
    with open(path, "w") as f:
        json.dump(script_to_dict(script), f, indent=2)
        f.write("\n")


def write_mission_csv(snapshots: Sequence[SimSnapshot], path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t_s", "x_cm", "depth_cm", "height_cm", "env", "energy_j"])
        for s in snapshots:
            writer.writerow(
                [
                    f"{s.time_s:.9f}",
                    f"{s.x_cm:.9f}",
                    f"{s.depth_cm:.9f}",
                    f"{s.morph.height_cm:.9f}",
                    s.environment.value,
                    f"{s.energy_j:.9f}",
                ]
            )
