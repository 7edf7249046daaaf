"""Scissor-lift body kinematics: slider travel, body height, fin pitch, displaced volume.

The body is a single-stage scissor lift driven by a horizontal screw. Pulling the
slider in (smaller separation x) raises the platform; height follows the closed
form base + sqrt(L^2 - x^2). Two interchangeable volume models map height to
displaced body volume, and a bell-crank linkage maps height to fin pitch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, GeometryError

# Default height envelope: fully compressed crawl pose to fully expanded swim pose.
H_MIN_CM = 4.5
H_MAX_CM = 9.0

# Usable stroke of the drive screw (55 mm).
SCREW_STROKE_CM = 5.5

# Fixed displaced volume hanging off the body: servos (72) + electronics pouch (48).
FIXED_VOLUME_CM3 = 120.0


class Direction(Enum):
    EXTEND = "extend"    # slider separation grows, body compresses
    RETRACT = "retract"  # slider separation shrinks, body expands


@dataclass(frozen=True)
class ScissorGeometry:
    link_length_cm: float = 5.5
    base_height_cm: float = 3.5
    # Stroke that spans exactly h in [4.5, 9.0] with the defaults above.
    slider_max_cm: float = math.sqrt(5.5**2 - 1.0**2)
    screw_lead_mm_per_rev: float = 0.5
    output_speed_rev_s: float = 2.40

    def __post_init__(self):
        if self.link_length_cm <= 0:
            raise DomainError("link_length_cm must be > 0")
        if self.base_height_cm < 0:
            raise DomainError("base_height_cm must be >= 0")
        if not 0 < self.slider_max_cm <= SCREW_STROKE_CM:
            raise DomainError(
                f"slider_max_cm must lie in (0, {SCREW_STROKE_CM}] (usable screw stroke)"
            )
        if self.slider_max_cm >= self.link_length_cm:
            raise GeometryError("slider_max_cm must be smaller than link_length_cm")

    @property
    def travel_rate_cm_s(self) -> float:
        return self.screw_lead_mm_per_rev * 0.1 * self.output_speed_rev_s

    @property
    def h_min_cm(self) -> float:
        return slider_to_height(self.slider_max_cm, self)

    @property
    def h_max_cm(self) -> float:
        return slider_to_height(0.0, self)


def slider_to_height(x_cm: float, geom: ScissorGeometry) -> float:
    """Platform height for slider separation x; strictly decreasing in x."""
    if x_cm < 0:
        raise DomainError(f"slider position {x_cm} cm below lower bound 0")
    if x_cm > geom.slider_max_cm:
        raise DomainError(
            f"slider position {x_cm} cm above upper bound {geom.slider_max_cm} cm"
        )
    return geom.base_height_cm + math.sqrt(geom.link_length_cm**2 - x_cm**2)


def height_to_slider(height_cm: float, geom: ScissorGeometry) -> float:
    """Inverse of slider_to_height on the valid height range."""
    lo, hi = geom.h_min_cm, geom.h_max_cm
    if not lo - 1e-12 <= height_cm <= hi + 1e-12:
        raise DomainError(f"height {height_cm} cm outside [{lo}, {hi}] cm")
    rise = height_cm - geom.base_height_cm
    return math.sqrt(max(0.0, geom.link_length_cm**2 - rise**2))


def actuator_travel(
    duration_s: float, direction: Direction, geom: ScissorGeometry, x0_cm: float
) -> float:
    """Slider position after running the screw for duration_s; saturates at the stops."""
    if duration_s < 0:
        raise DomainError("duration_s must be >= 0")
    sign = 1.0 if direction is Direction.EXTEND else -1.0
    x = x0_cm + sign * geom.travel_rate_cm_s * duration_s
    return min(max(x, 0.0), geom.slider_max_cm)


class VolumeVariant(Enum):
    PRISM = "prism"
    AFFINE = "affine"


@dataclass(frozen=True)
class VolumeModel:
    """Displaced body volume as a function of body height.

    Prism treats the body as footprint_area * height. Affine interpolates the
    measured compressed/expanded body volumes, which a prism cannot reproduce
    simultaneously; it is the default for force computations.
    """

    variant: VolumeVariant = VolumeVariant.AFFINE
    footprint_area_cm2: float = 40.5          # 9 cm x 4.5 cm
    affine_slope_cm3_per_cm: float = 37.5     # through (4.5, 135) and (9.0, 303.75)
    affine_offset_cm3: float = -33.75
    fixed_volume_cm3: float = FIXED_VOLUME_CM3
    h_min_cm: float = H_MIN_CM
    h_max_cm: float = H_MAX_CM

    @classmethod
    def prism(cls) -> "VolumeModel":
        return cls(variant=VolumeVariant.PRISM)

    @classmethod
    def affine(cls) -> "VolumeModel":
        return cls(variant=VolumeVariant.AFFINE)

    def evaluate(self, height_cm: float) -> float:
        """Body volume without range checking (used for drafts and design sweeps)."""
        if self.variant is VolumeVariant.PRISM:
            v = self.footprint_area_cm2 * height_cm
        else:
            v = self.affine_slope_cm3_per_cm * height_cm + self.affine_offset_cm3
        return max(0.0, v)

    def body_volume(self, height_cm: float) -> float:
        self._check_height(height_cm)
        return self.evaluate(height_cm)

    def total_volume(self, height_cm: float) -> float:
        return self.body_volume(height_cm) + self.fixed_volume_cm3

    def total_unchecked(self, height_cm: float) -> float:
        return self.evaluate(height_cm) + self.fixed_volume_cm3

    def _check_height(self, height_cm: float):
        if not self.h_min_cm - 1e-9 <= height_cm <= self.h_max_cm + 1e-9:
            raise DomainError(
                f"height {height_cm} cm outside [{self.h_min_cm}, {self.h_max_cm}] cm"
            )


def body_volume(height_cm: float, model: VolumeModel) -> float:
    return model.body_volume(height_cm)


def total_volume(height_cm: float, model: VolumeModel) -> float:
    return model.total_volume(height_cm)


class BellCrankVariant(Enum):
    LINEAR = "linear"
    CRANK = "crank"


@dataclass(frozen=True)
class BellCrankModel:
    """Height-to-fin-pitch linkage; both variants hit exactly 0/90 deg at the endpoints."""

    variant: BellCrankVariant = BellCrankVariant.LINEAR
    crank_radius_cm: float = 3.0
    reference_height_cm: float = (H_MIN_CM + H_MAX_CM) / 2.0


def fin_pitch(
    height_cm: float,
    model: BellCrankModel,
    h_min_cm: float = H_MIN_CM,
    h_max_cm: float = H_MAX_CM,
) -> float:
    """Fin pitch in degrees: 0 = flat (crawl), 90 = vertical (swim)."""
    if not h_min_cm - 1e-12 <= height_cm <= h_max_cm + 1e-12:
        raise DomainError(f"height {height_cm} cm outside [{h_min_cm}, {h_max_cm}] cm")
    fraction = (height_cm - h_min_cm) / (h_max_cm - h_min_cm)
    if model.variant is BellCrankVariant.LINEAR:
        return 90.0 * fraction

    def raw(h):
        s = (h - model.reference_height_cm) / model.crank_radius_cm
        if abs(s) > 1.0:
            raise GeometryError(
                f"height {h} cm outside crank reach "
                f"(radius {model.crank_radius_cm} cm about {model.reference_height_cm} cm)"
            )
        return math.asin(s)

    lo, hi = raw(h_min_cm), raw(h_max_cm)
    # Affine renormalization so the endpoints land exactly on 0 and 90 deg.
    return 90.0 * (raw(height_cm) - lo) / (hi - lo)


@dataclass(frozen=True)
class MorphState:
    """Coupled pose of the morphing body at one instant."""

    slider_x_cm: float
    height_cm: float
    fin_pitch_deg: float
    morph_fraction: float


def morph_state(
    slider_x_cm: float,
    geom: ScissorGeometry,
    bell_crank: BellCrankModel = BellCrankModel(),
) -> MorphState:
    h = slider_to_height(slider_x_cm, geom)
    lo, hi = geom.h_min_cm, geom.h_max_cm
    fraction = (h - lo) / (hi - lo)
    return MorphState(
        slider_x_cm=slider_x_cm,
        height_cm=h,
        fin_pitch_deg=fin_pitch(h, bell_crank, lo, hi),
        morph_fraction=min(max(fraction, 0.0), 1.0),
    )
