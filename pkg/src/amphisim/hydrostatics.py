"""Hydrostatic force balance: weight, buoyancy, neutral solve, draft, design space."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DomainError
from .morphology import VolumeModel, VolumeVariant

CM3_TO_M3 = 1e-6

# |net| below this is reported as neutral; the solvers themselves go to 1e-9 N.
NEUTRAL_REPORT_TOL_N = 1e-3
NEUTRAL_SOLVE_TOL_N = 1e-9


@dataclass(frozen=True)
class FluidParams:
    density_kg_m3: float = 1000.0
    gravity_m_s2: float = 9.81

    def __post_init__(self):
        if self.density_kg_m3 <= 0 or self.gravity_m_s2 <= 0:
            raise DomainError("fluid density and gravity must be > 0")


@dataclass(frozen=True)
class ForceBreakdown:
    """Vertical force balance at an instant; net is positive upward."""

    weight_n: float
    buoyancy_n: float
    drag_n: float = 0.0
    contact_normal_n: float = 0.0

    @property
    def net_n(self) -> float:
        return self.buoyancy_n - self.weight_n + self.drag_n + self.contact_normal_n


def weight_force(mass_kg: float, fluid: FluidParams = FluidParams()) -> float:
    if mass_kg < 0:
        raise DomainError("mass must be >= 0")
    return mass_kg * fluid.gravity_m_s2


def buoyant_force(displaced_volume_cm3: float, fluid: FluidParams = FluidParams()) -> float:
    if displaced_volume_cm3 < 0:
        raise DomainError("displaced volume must be >= 0")
    return fluid.density_kg_m3 * displaced_volume_cm3 * CM3_TO_M3 * fluid.gravity_m_s2


def net_hydrostatic_force(
    mass_kg: float,
    height_cm: float,
    model: VolumeModel,
    fluid: FluidParams = FluidParams(),
) -> float:
    """Buoyancy minus weight for the fully submerged robot at the given body height."""
    return buoyant_force(model.total_volume(height_cm), fluid) - weight_force(mass_kg, fluid)


def _net_unchecked(mass_kg, height_cm, model, fluid) -> float:
    return buoyant_force(model.total_unchecked(height_cm), fluid) - weight_force(mass_kg, fluid)


def classify_buoyancy(net_n: float, tol_n: float = NEUTRAL_REPORT_TOL_N) -> str:
    if net_n > tol_n:
        return "positive"
    if net_n < -tol_n:
        return "negative"
    return "neutral"


class NeutralOutcome(Enum):
    ROOT = "root"
    ALWAYS_FLOATS = "always_floats"
    ALWAYS_SINKS = "always_sinks"


@dataclass(frozen=True)
class NeutralSolve:
    outcome: NeutralOutcome
    height_cm: Optional[float]

    @property
    def has_root(self) -> bool:
        return self.outcome is NeutralOutcome.ROOT


def _neutral_closed_form(mass_kg: float, model: VolumeModel, fluid: FluidParams) -> float:
    # Height at which displaced volume equals the robot's equivalent water volume.
    displaced_cm3 = mass_kg / fluid.density_kg_m3 / CM3_TO_M3
    body_cm3 = displaced_cm3 - model.fixed_volume_cm3
    if model.variant is VolumeVariant.PRISM:
        return body_cm3 / model.footprint_area_cm2
    return (body_cm3 - model.affine_offset_cm3) / model.affine_slope_cm3_per_cm


def neutral_height(
    mass_kg: float,
    model: VolumeModel,
    fluid: FluidParams = FluidParams(),
) -> NeutralSolve:
    """Body height producing zero net force, or the always-floats/sinks outcome.

    height_cm carries the closed-form solution even when it falls outside the
    morphing range, so boundary cases stay inspectable.
    """
    h = _neutral_closed_form(mass_kg, model, fluid)
    if h < model.h_min_cm:
        return NeutralSolve(NeutralOutcome.ALWAYS_FLOATS, h)
    if h > model.h_max_cm:
        return NeutralSolve(NeutralOutcome.ALWAYS_SINKS, h)
    return NeutralSolve(NeutralOutcome.ROOT, h)


def neutral_height_bisect(
    mass_kg: float,
    total_volume_fn: Callable[[float], float],
    h_lo_cm: float,
    h_hi_cm: float,
    fluid: FluidParams = FluidParams(),
) -> NeutralSolve:
    """Bisection solve for an arbitrary monotone height-to-total-volume map."""

    def net(h):
        return buoyant_force(total_volume_fn(h), fluid) - weight_force(mass_kg, fluid)

    lo, hi = net(h_lo_cm), net(h_hi_cm)
    if lo > 0 and hi > 0:
        return NeutralSolve(NeutralOutcome.ALWAYS_FLOATS, None)
    if lo < 0 and hi < 0:
        return NeutralSolve(NeutralOutcome.ALWAYS_SINKS, None)
    a, b = h_lo_cm, h_hi_cm
    for _ in range(200):
        mid = 0.5 * (a + b)
        f = net(mid)
        if abs(f) < NEUTRAL_SOLVE_TOL_N:
            return NeutralSolve(NeutralOutcome.ROOT, mid)
        if (f < 0) == (lo < 0):
            a = mid
        else:
            b = mid
    return NeutralSolve(NeutralOutcome.ROOT, 0.5 * (a + b))


@dataclass(frozen=True)
class DraftResult:
    can_float: bool
    draft_cm: Optional[float]


def floating_draft(
    mass_kg: float,
    height_cm: float,
    model: VolumeModel,
    fluid: FluidParams = FluidParams(),
) -> DraftResult:
    """Submerged body depth at surface equilibrium.

    The fixed volume (servos and pouch) hangs below the body and is treated as
    always fully submerged.
    """
    if _net_unchecked(mass_kg, height_cm, model, fluid) <= 0:
        return DraftResult(False, None)
    draft = _neutral_closed_form(mass_kg, model, fluid)
    return DraftResult(True, min(max(draft, 0.0), height_cm))


@dataclass(frozen=True)
class DesignSpaceGrid:
    """Net force sampled over a mass x height rectangle; rows follow height_axis."""

    mass_axis_kg: np.ndarray
    height_axis_cm: np.ndarray
    net_force_n: np.ndarray
    neutral_curve: list = field(default_factory=list)  # (mass_kg, height_cm) pairs


def design_space(
    mass_range_kg=(0.200, 0.500),
    height_range_cm=(4.0, 10.0),
    resolution=(61, 61),
    model: VolumeModel = VolumeModel.affine(),
    fluid: FluidParams = FluidParams(),
) -> DesignSpaceGrid:
    n_mass, n_height = resolution
    if n_mass < 2 or n_height < 2:
        raise DomainError("resolution must be >= 2 per axis")
    if mass_range_kg[0] >= mass_range_kg[1] or height_range_cm[0] >= height_range_cm[1]:
        raise DomainError("ranges must be non-degenerate and increasing")

    masses = np.linspace(mass_range_kg[0], mass_range_kg[1], n_mass)
    heights = np.linspace(height_range_cm[0], height_range_cm[1], n_height)

    volumes = np.array([model.total_unchecked(h) for h in heights])
    buoy = fluid.density_kg_m3 * volumes * CM3_TO_M3 * fluid.gravity_m_s2
    net = buoy[:, None] - masses[None, :] * fluid.gravity_m_s2

    curve = []
    for m in masses:
        solve = neutral_height(float(m), model, fluid)
        h = solve.height_cm
        if h is not None and height_range_cm[0] <= h <= height_range_cm[1]:
            curve.append((float(m), h))

    return DesignSpaceGrid(masses, heights, net, curve)


def write_design_space_csv(grid: DesignSpaceGrid, grid_path, curve_path=None):
    with open(grid_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["mass_g", "height_cm", "net_force_n"])
        for i, h in enumerate(grid.height_axis_cm):
            for j, m in enumerate(grid.mass_axis_kg):
                writer.writerow(
                    [f"{m * 1000:.9f}", f"{h:.9f}", f"{grid.net_force_n[i, j]:.9f}"]
                )
    if curve_path is not None:
        with open(curve_path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["mass_g", "height_cm"])
            for m, h in grid.neutral_curve:
                writer.writerow([f"{m * 1000:.9f}", f"{h:.9f}"])
