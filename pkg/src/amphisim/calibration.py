"""Fits the free simulator parameters (drag coefficients, gait strides) against
measured timings and speeds, using bracketed bisection on monotone residuals
with the depth simulator as the inner oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .dynamics import (
    Contact,
    DragModel,
    MorphCommand,
    SimParams,
    VerticalState,
    floor_start_state,
    simulate_depth,
    surface_start_state,
    transition_time,
)
from .errors import CalibrationError, DomainError
from .morphology import morph_state

MAX_ITERATIONS = 60
TIME_TOL_S = 0.05
BRACKET_SHRINK = 1e-6


@dataclass(frozen=True)
class CalibrationResult:
    coefficient: float
    achieved_time_s: float
    iterations: int


def _with_coefficient(params: SimParams, coefficient: float, maneuver: str) -> SimParams:
    if maneuver == "descend":
        drag = replace(params.drag, cd_descend=coefficient)
    else:
        drag = replace(params.drag, cd_ascend=coefficient)
    return replace(params, drag=drag)


def _drop_time(coefficient: float, descent_distance_cm: float, params: SimParams, maneuver: str):
    """Time for a fixed-configuration robot to cover the distance from rest."""
    p = _with_coefficient(params, coefficient, maneuver)
    geom = p.body.geometry
    duration = 300.0
    if maneuver == "descend":
        p = replace(p, floor_depth_cm=-descent_distance_cm)
        m = morph_state(geom.slider_max_cm, geom, p.body.bell_crank)
        initial = VerticalState(0.0, 0.0, 0.0, m, Contact.FREE_COLUMN)
        states = simulate_depth([], p, duration, initial)
        return transition_time(states, to_contact=Contact.ON_FLOOR)
    # ascend: rise from the floor to draft equilibrium over the given distance
    start = surface_start_state(p)
    p = replace(p, floor_depth_cm=start.depth_cm - descent_distance_cm)
    m = morph_state(0.0, geom, p.body.bell_crank)
    initial = VerticalState(0.0, p.floor_depth_cm, 0.0, m, Contact.ON_FLOOR)
    states = simulate_depth([], p, duration, initial)
    return transition_time(states, to_contact=Contact.AT_SURFACE)


def _sink_segment_time(coefficient: float, params: SimParams):
    """Surface-departure to floor-contact time of a compress-at-surface maneuver."""
    p = _with_coefficient(params, coefficient, "descend")
    states = simulate_depth([(0.0, MorphCommand.COMPRESS)], p, 150.0, surface_start_state(p))
    departure = transition_time(states, from_contact=Contact.AT_SURFACE)
    arrival = transition_time(states, to_contact=Contact.ON_FLOOR)
    if departure is None or arrival is None:
        return None
    return arrival - departure


def _ascent_segment_time(coefficient: float, params: SimParams):
    """Floor-departure to surface time of an expand-from-floor maneuver."""
    p = _with_coefficient(params, coefficient, "ascend")
    states = simulate_depth([(0.0, MorphCommand.EXPAND)], p, 150.0, floor_start_state(p))
    departure = transition_time(states, from_contact=Contact.ON_FLOOR)
    arrival = transition_time(states, to_contact=Contact.AT_SURFACE)
    if departure is None or arrival is None:
        return None
    return arrival - departure


def _bisect_coefficient(time_fn, target_s: float, bracket) -> CalibrationResult:
    lo, hi = bracket
    if not 0 < lo < hi:
        raise DomainError("bracket must be positive and increasing")

    def timed(c):
        t = time_fn(c)
        return float("inf") if t is None else t

    # Descent/ascent time must grow with the coefficient for bisection to apply.
    probes = [lo * (hi / lo) ** (k / 4) for k in range(5)]
    probe_times = [timed(c) for c in probes]
    if any(a > b for a, b in zip(probe_times, probe_times[1:])):
        raise CalibrationError("time is not monotone in the drag coefficient over the bracket")

    t_lo, t_hi = probe_times[0], probe_times[-1]
    if not t_lo <= target_s <= t_hi:
        raise CalibrationError(
            f"target {target_s} s unreachable; achievable range is "
            f"[{t_lo:.3f}, {t_hi:.3f}] s over the bracket",
            achievable_range=(t_lo, t_hi),
        )

    width0 = hi - lo
    iterations = 0
    for _ in range(MAX_ITERATIONS):
        mid = 0.5 * (lo + hi)
        t_mid = timed(mid)
        iterations += 1
        if t_mid < target_s:
            lo = mid
        else:
            hi = mid
        if hi - lo <= BRACKET_SHRINK * width0:
            break
    coeff = 0.5 * (lo + hi)
    achieved = timed(coeff)
    if abs(achieved - target_s) > TIME_TOL_S:
        raise CalibrationError(
            f"bisection converged to {achieved:.3f} s, outside {TIME_TOL_S} s of target {target_s} s"
        )
    return CalibrationResult(coeff, achieved, iterations)


def calibrate_drag(
    target_time_s: float,
    descent_distance_cm: float = 30.0,
    bracket=(1.0, 1000.0),
    maneuver: str = "descend",
    params: Optional[SimParams] = None,
) -> CalibrationResult:
    """Drag coefficient making a fixed-configuration drop (or rise) from rest
    cover descent_distance_cm in target_time_s."""
    if maneuver not in ("descend", "ascend"):
        raise DomainError("maneuver must be 'descend' or 'ascend'")
    params = params or SimParams()
    return _bisect_coefficient(
        lambda c: _drop_time(c, descent_distance_cm, params, maneuver), target_time_s, bracket
    )


def calibrate_sink_coefficient(
    target_time_s: float = 7.0,
    bracket=(1.0, 1000.0),
    params: Optional[SimParams] = None,
) -> CalibrationResult:
    """cd_descend such that the sinking segment of a full compress-at-surface
    maneuver lasts target_time_s."""
    params = params or SimParams()
    return _bisect_coefficient(lambda c: _sink_segment_time(c, params), target_time_s, bracket)


def calibrate_ascent_coefficient(
    target_time_s: float = 2.0,
    bracket=(1.0, 1000.0),
    params: Optional[SimParams] = None,
) -> CalibrationResult:
    """cd_ascend such that the post-lift-off ascent of a full expand-from-floor
    maneuver lasts target_time_s."""
    params = params or SimParams()
    return _bisect_coefficient(lambda c: _ascent_segment_time(c, params), target_time_s, bracket)


def calibrate_gait(target_speed_cm_s: float, cadence_per_s: float) -> float:
    """Stride advance reproducing the target speed at a fixed cadence."""
    if cadence_per_s <= 0:
        raise DomainError("cadence must be > 0")
    if target_speed_cm_s < 0:
        raise DomainError("target speed must be >= 0")
    return target_speed_cm_s / cadence_per_s
