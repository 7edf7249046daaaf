"""1-D vertical dynamics: weight, buoyancy, quadratic drag, floor and surface contact.

Depth is the position of the robot's bottom face, 0 at the water surface and
negative downward. A semi-implicit fixed-step integrator (default 240 Hz)
advances velocity then depth while morph commands ramp the slider, so buoyancy
varies mid-maneuver.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import DomainError, IntegrationFault
from .hydrostatics import (
    FluidParams,
    ForceBreakdown,
    buoyant_force,
    floating_draft,
    net_hydrostatic_force,
    weight_force,
)
from .morphology import (
    BellCrankModel,
    Direction,
    MorphState,
    ScissorGeometry,
    VolumeModel,
    actuator_travel,
    morph_state,
)

# Shipped drag coefficients, produced by the calibration module:
#   cd_descend makes the sink segment of a compress-at-surface maneuver
#   (surface departure to floor contact over the 30 cm tank) last 7.0 s;
#   cd_ascend makes the floor-to-surface ascent of the fully expanded body
#   last 2.0 s. Regenerate with `amphisim calibrate drag`.
CD_DESCEND_DEFAULT = 140.26
CD_ASCEND_DEFAULT = 31.61

# Net upward force needed to break the robot free of the pebbled floor
# (interlock/suction); keeps lift-off near the end of the expansion ramp,
# matching the observed resurfacing timeline.
BREAK_FREE_FORCE_N = 0.91

DT_DEFAULT_S = 1.0 / 240.0


class Contact(Enum):
    FREE_COLUMN = "free_column"
    ON_FLOOR = "on_floor"
    AT_SURFACE = "at_surface"


class MorphCommand(Enum):
    EXPAND = "expand"
    COMPRESS = "compress"
    STOP = "stop"


@dataclass(frozen=True)
class DragModel:
    cd_descend: float = CD_DESCEND_DEFAULT
    cd_ascend: float = CD_ASCEND_DEFAULT
    reference_area_m2: float = 40.5e-4  # body footprint
    added_mass_coeff: float = 0.0

    def __post_init__(self):
        if self.cd_descend <= 0 or self.cd_ascend <= 0 or self.reference_area_m2 <= 0:
            raise DomainError("drag coefficients and reference area must be > 0")

    def coefficient(self, morph_fraction: float) -> float:
        f = min(max(morph_fraction, 0.0), 1.0)
        return self.cd_descend + f * (self.cd_ascend - self.cd_descend)


@dataclass(frozen=True)
class BodyParams:
    mass_kg: float = 0.330
    geometry: ScissorGeometry = ScissorGeometry()
    volume_model: VolumeModel = VolumeModel.affine()
    bell_crank: BellCrankModel = BellCrankModel()


@dataclass(frozen=True)
class SimParams:
    body: BodyParams = BodyParams()
    fluid: FluidParams = FluidParams()
    drag: DragModel = DragModel()
    floor_depth_cm: float = -30.0
    dt_s: float = DT_DEFAULT_S
    command_latency_s: float = 10.0
    break_free_force_n: float = BREAK_FREE_FORCE_N


@dataclass(frozen=True)
class VerticalState:
    time_s: float
    depth_cm: float
    velocity_cm_s: float  # positive upward
    morph: MorphState
    contact: Contact


def drag_force(
    velocity_cm_s: float,
    morph_fraction: float,
    model: DragModel,
    fluid: FluidParams = FluidParams(),
) -> float:
    """Quadratic drag in N, always opposing the velocity."""
    v = velocity_cm_s / 100.0
    cd = model.coefficient(morph_fraction)
    return -0.5 * fluid.density_kg_m3 * cd * model.reference_area_m2 * v * abs(v)


def force_breakdown(state: VerticalState, params: SimParams) -> ForceBreakdown:
    body = params.body
    weight = weight_force(body.mass_kg, params.fluid)
    if state.contact is Contact.AT_SURFACE:
        buoy = weight  # draft equilibrium
    else:
        buoy = buoyant_force(
            body.volume_model.total_unchecked(state.morph.height_cm), params.fluid
        )
    drag = drag_force(state.velocity_cm_s, state.morph.morph_fraction, params.drag, params.fluid)
    normal = max(0.0, weight - buoy) if state.contact is Contact.ON_FLOOR else 0.0
    return ForceBreakdown(weight_n=weight, buoyancy_n=buoy, drag_n=drag, contact_normal_n=normal)


def hydrostatic_net(state: VerticalState, params: SimParams) -> float:
    return net_hydrostatic_force(
        params.body.mass_kg, state.morph.height_cm, params.body.volume_model, params.fluid
    )


def advance_morph(morph: MorphState, command: MorphCommand, params: SimParams, dt: float) -> MorphState:
    geom = params.body.geometry
    if command is MorphCommand.EXPAND:
        x = actuator_travel(dt, Direction.RETRACT, geom, morph.slider_x_cm)
    elif command is MorphCommand.COMPRESS:
        x = actuator_travel(dt, Direction.EXTEND, geom, morph.slider_x_cm)
    else:
        return morph
    if x == morph.slider_x_cm:
        return morph
    return morph_state(x, geom, params.body.bell_crank)


def step(
    state: VerticalState,
    params: SimParams,
    dt: Optional[float] = None,
    morph_command: MorphCommand = MorphCommand.STOP,
) -> VerticalState:
    """One fixed-step update; contact constraints clamp depth and zero velocity."""
    dt = params.dt_s if dt is None else dt
    if dt <= 0:
        raise DomainError("dt must be > 0")
    body = params.body
    m = advance_morph(state.morph, morph_command, params, dt)
    t = state.time_s + dt
    net_hydro = net_hydrostatic_force(body.mass_kg, m.height_cm, body.volume_model, params.fluid)

    if state.contact is Contact.AT_SURFACE:
        if net_hydro <= 0:
            # Surface can no longer support the robot; it submerges and sinks.
            return VerticalState(t, -m.height_cm, 0.0, m, Contact.FREE_COLUMN)
        draft = floating_draft(body.mass_kg, m.height_cm, body.volume_model, params.fluid)
        return VerticalState(t, -draft.draft_cm, 0.0, m, Contact.AT_SURFACE)

    if state.contact is Contact.ON_FLOOR and net_hydro <= params.break_free_force_n:
        return VerticalState(t, params.floor_depth_cm, 0.0, m, Contact.ON_FLOOR)

    drag = drag_force(state.velocity_cm_s, m.morph_fraction, params.drag, params.fluid)
    m_eff = body.mass_kg * (1.0 + params.drag.added_mass_coeff)
    v = state.velocity_cm_s / 100.0 + (net_hydro + drag) / m_eff * dt
    depth = state.depth_cm + v * 100.0 * dt
    if not (math.isfinite(v) and math.isfinite(depth)):
        raise IntegrationFault(f"non-finite state at t={t:.4f} s")

    if depth <= params.floor_depth_cm:
        return VerticalState(t, params.floor_depth_cm, 0.0, m, Contact.ON_FLOOR)
    if net_hydro > 0:
        d = floating_draft(body.mass_kg, m.height_cm, body.volume_model, params.fluid)
        if d.can_float and depth >= -d.draft_cm:
            return VerticalState(t, -d.draft_cm, 0.0, m, Contact.AT_SURFACE)
    return VerticalState(t, depth, v * 100.0, m, Contact.FREE_COLUMN)


def surface_start_state(params: SimParams) -> VerticalState:
    """Fully expanded, floating at draft equilibrium."""
    m = morph_state(0.0, params.body.geometry, params.body.bell_crank)
    d = floating_draft(params.body.mass_kg, m.height_cm, params.body.volume_model, params.fluid)
    if not d.can_float:
        raise DomainError("robot is not positively buoyant when fully expanded")
    return VerticalState(0.0, -d.draft_cm, 0.0, m, Contact.AT_SURFACE)


def floor_start_state(params: SimParams) -> VerticalState:
    """Fully compressed, resting on the floor."""
    m = morph_state(params.body.geometry.slider_max_cm, params.body.geometry, params.body.bell_crank)
    return VerticalState(0.0, params.floor_depth_cm, 0.0, m, Contact.ON_FLOOR)


def simulate_depth(
    commands: Sequence[tuple[float, MorphCommand]],
    params: SimParams,
    duration_s: float,
    initial: Optional[VerticalState] = None,
) -> list[VerticalState]:
    """Fixed-step trajectory under timed morph commands.

    Morph commands take effect command_latency_s after they are issued,
    modeling the operator-to-robot delay. The latest effective command
    persists until replaced.
    """
    if any(commands[i][0] > commands[i + 1][0] for i in range(len(commands) - 1)):
        raise DomainError("commands must be sorted by time")
    state = surface_start_state(params) if initial is None else initial
    effective = [(t + params.command_latency_s, cmd) for t, cmd in commands]
    states = [state]
    active = MorphCommand.STOP
    idx = 0
    n_steps = int(round(duration_s / params.dt_s))
    for _ in range(n_steps):
        while idx < len(effective) and effective[idx][0] <= state.time_s + 1e-9:
            active = effective[idx][1]
            idx += 1
        state = step(state, params, params.dt_s, active)
        states.append(state)
    return states


def transition_time(
    states: Sequence[VerticalState],
    to_contact: Optional[Contact] = None,
    from_contact: Optional[Contact] = None,
) -> Optional[float]:
    """Time of the first contact transition matching the given endpoints."""
    for prev, cur in zip(states, states[1:]):
        if prev.contact is cur.contact:
            continue
        if to_contact is not None and cur.contact is not to_contact:
            continue
        if from_contact is not None and prev.contact is not from_contact:
            continue
        return cur.time_s
    return None


def write_trajectory_csv(states: Sequence[VerticalState], params: SimParams, path):
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["t_s", "depth_cm", "velocity_cm_s", "height_cm", "net_force_n", "contact"])
        for s in states:
            writer.writerow(
                [
                    f"{s.time_s:.9f}",
                    f"{s.depth_cm:.9f}",
                    f"{s.velocity_cm_s:.9f}",
                    f"{s.morph.height_cm:.9f}",
                    f"{hydrostatic_net(s, params):.9f}",
                    s.contact.value,
                ]
            )
