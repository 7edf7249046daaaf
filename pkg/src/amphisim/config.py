"""Shared JSON configuration: one file drives every module's parameters."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .dynamics import BodyParams, DragModel, SimParams
from .energy import BatterySpec, PowerModel
from .errors import DomainError
from .hydrostatics import FluidParams
from .locomotion import GaitConfig
from .mission import EnvGeometry
from .morphology import BellCrankModel, BellCrankVariant, ScissorGeometry, VolumeModel, VolumeVariant


@dataclass(frozen=True)
class AppConfig:
    mass_kg: float = 0.330
    geometry: ScissorGeometry = ScissorGeometry()
    bell_crank: BellCrankModel = BellCrankModel()
    volume_model: VolumeModel = VolumeModel.affine()
    drag: DragModel = DragModel()
    gait: GaitConfig = GaitConfig()
    power: PowerModel = PowerModel()
    battery: BatterySpec = BatterySpec()
    environment: EnvGeometry = EnvGeometry()
    fluid: FluidParams = FluidParams()
    command_latency_s: float = 10.0

    def sim_params(self) -> SimParams:
        body = BodyParams(
            mass_kg=self.mass_kg,
            geometry=self.geometry,
            volume_model=self.volume_model,
            bell_crank=self.bell_crank,
        )
        return SimParams(
            body=body,
            fluid=self.fluid,
            drag=self.drag,
            floor_depth_cm=-self.environment.water_depth_cm,
            command_latency_s=self.command_latency_s,
        )


def config_to_dict(cfg: AppConfig) -> dict:
    return {
        "geometry": {
            "mass_kg": cfg.mass_kg,
            "link_length_cm": cfg.geometry.link_length_cm,
            "base_height_cm": cfg.geometry.base_height_cm,
            "slider_max_cm": cfg.geometry.slider_max_cm,
            "screw_lead_mm_per_rev": cfg.geometry.screw_lead_mm_per_rev,
            "output_speed_rev_s": cfg.geometry.output_speed_rev_s,
            "bell_crank_variant": cfg.bell_crank.variant.value,
            "crank_radius_cm": cfg.bell_crank.crank_radius_cm,
            "reference_height_cm": cfg.bell_crank.reference_height_cm,
        },
        "volume_model": {
            "variant": cfg.volume_model.variant.value,
            "footprint_area_cm2": cfg.volume_model.footprint_area_cm2,
            "affine_slope_cm3_per_cm": cfg.volume_model.affine_slope_cm3_per_cm,
            "affine_offset_cm3": cfg.volume_model.affine_offset_cm3,
            "fixed_volume_cm3": cfg.volume_model.fixed_volume_cm3,
            "h_min_cm": cfg.volume_model.h_min_cm,
            "h_max_cm": cfg.volume_model.h_max_cm,
        },
        "drag": {
            "cd_descend": cfg.drag.cd_descend,
            "cd_ascend": cfg.drag.cd_ascend,
            "reference_area_m2": cfg.drag.reference_area_m2,
            "added_mass_coeff": cfg.drag.added_mass_coeff,
        },
        "gait": {
            "crawl_cadence_rot_s": cfg.gait.crawl_cadence_rot_s,
            "crawl_advance_cm": cfg.gait.crawl_advance_cm,
            "swim_cadence_stroke_s": cfg.gait.swim_cadence_stroke_s,
            "swim_advance_cm": cfg.gait.swim_advance_cm,
            "power_recovery_ratio": cfg.gait.power_recovery_ratio,
            "underwater_slip": cfg.gait.underwater_slip,
        },
        "power": {
            "baseline_power_w": cfg.power.baseline_power_w,
            "actuator_power_w": cfg.power.actuator_power_w,
            "crawl_power_w": cfg.power.crawl_power_w,
            "swim_power_w": cfg.power.swim_power_w,
        },
        "battery": {
            "voltage_v": cfg.battery.voltage_v,
            "capacity_mah": cfg.battery.capacity_mah,
            "max_c_rate": cfg.battery.max_c_rate,
        },
        "environment": {
            "ramp_angle_deg": cfg.environment.ramp_angle_deg,
            "ramp_length_cm": cfg.environment.ramp_length_cm,
            "water_depth_cm": cfg.environment.water_depth_cm,
            "tank_length_cm": cfg.environment.tank_length_cm,
            "land_length_cm": cfg.environment.land_length_cm,
            "fluid_density_kg_m3": cfg.fluid.density_kg_m3,
            "gravity_m_s2": cfg.fluid.gravity_m_s2,
            "command_latency_s": cfg.command_latency_s,
        },
    }


def config_from_dict(data: dict) -> AppConfig:
    try:
        g = data.get("geometry", {})
        vm = data.get("volume_model", {})
        env = data.get("environment", {})
        defaults = AppConfig()
        geometry = replace(
            defaults.geometry,
            **{k: g[k] for k in (
                "link_length_cm", "base_height_cm", "slider_max_cm",
                "screw_lead_mm_per_rev", "output_speed_rev_s",
            ) if k in g},
        )
        bell_crank = BellCrankModel(
            variant=BellCrankVariant(g.get("bell_crank_variant", "linear")),
            crank_radius_cm=g.get("crank_radius_cm", defaults.bell_crank.crank_radius_cm),
            reference_height_cm=g.get("reference_height_cm", defaults.bell_crank.reference_height_cm),
        )
        volume_model = replace(
            defaults.volume_model,
            variant=VolumeVariant(vm.get("variant", "affine")),
            **{k: vm[k] for k in (
                "footprint_area_cm2", "affine_slope_cm3_per_cm", "affine_offset_cm3",
                "fixed_volume_cm3", "h_min_cm", "h_max_cm",
            ) if k in vm},
        )
        return AppConfig(
            mass_kg=g.get("mass_kg", defaults.mass_kg),
            geometry=geometry,
            bell_crank=bell_crank,
            volume_model=volume_model,
            drag=replace(defaults.drag, **data.get("drag", {})),
            gait=replace(defaults.gait, **data.get("gait", {})),
            power=replace(defaults.power, **data.get("power", {})),
            battery=replace(defaults.battery, **data.get("battery", {})),
            environment=replace(
                defaults.environment,
                **{k: env[k] for k in (
                    "ramp_angle_deg", "ramp_length_cm", "water_depth_cm",
                    "tank_length_cm", "land_length_cm",
                ) if k in env},
            ),
            fluid=FluidParams(
                density_kg_m3=env.get("fluid_density_kg_m3", defaults.fluid.density_kg_m3),
                gravity_m_s2=env.get("gravity_m_s2", defaults.fluid.gravity_m_s2),
            ),
            command_latency_s=env.get("command_latency_s", defaults.command_latency_s),
        )
    except (TypeError, ValueError) as exc:
        raise DomainError(f"malformed configuration: {exc}") from exc


def load_config(path=None) -> AppConfig:
    if path is None:
        return AppConfig()
    with open(path) as f:
        return config_from_dict(json.load(f))


def save_config(cfg: AppConfig, path):
    with open(path, "w") as f:
        json.dump(config_to_dict(cfg), f, indent=2)
        f.write("\n")
