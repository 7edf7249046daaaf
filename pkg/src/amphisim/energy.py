"""Electrical energy accounting: battery runtime, morph-cycle energy, mission breakdowns."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, OverloadError

ADDITIVITY_TOL_J = 1e-9


@dataclass(frozen=True)
class BatterySpec:
    voltage_v: float = 3.7
    capacity_mah: float = 1000.0
    max_c_rate: float = 20.0

    def __post_init__(self):
        if min(self.voltage_v, self.capacity_mah, self.max_c_rate) <= 0:
            raise DomainError("battery parameters must be > 0")

    @property
    def capacity_j(self) -> float:
        return self.voltage_v * self.capacity_mah * 3.6


@dataclass(frozen=True)
class PowerModel:
    """Electrical power split by activity.

    Only the overall average draw (0.5 A at 3.7 V) and the morph energy bound
    are measured; the split below is a shipped default tuned so a representative
    mission averages ~1.85 W.
    """

    baseline_power_w: float = 1.55
    actuator_power_w: float = 0.12
    crawl_power_w: float = 0.45
    swim_power_w: float = 0.55

    def __post_init__(self):
        if min(self.baseline_power_w, self.actuator_power_w,
               self.crawl_power_w, self.swim_power_w) < 0:
            raise DomainError("powers must be non-negative")


def battery_runtime(spec: BatterySpec, avg_current_ma: float) -> float:
    """Runtime in hours at a constant average current draw."""
    if avg_current_ma <= 0:
        raise DomainError("average current must be > 0")
    if avg_current_ma > spec.capacity_mah * spec.max_c_rate:
        raise OverloadError(
            f"current {avg_current_ma} mA exceeds {spec.max_c_rate}C rating "
            f"({spec.capacity_mah * spec.max_c_rate} mA)"
        )
    return spec.capacity_mah / avg_current_ma


def morph_cycle_energy(
    model: PowerModel = PowerModel(),
    t_compress_s: float = 10.0,
    t_expand_s: float = 45.0,
) -> float:
    """Actuator energy for one compress+expand cycle in J."""
    if t_compress_s < 0 or t_expand_s < 0:
        raise DomainError("durations must be >= 0")
    return model.actuator_power_w * (t_compress_s + t_expand_s)


@dataclass(frozen=True)
class EnergyBreakdown:
    per_phase_j: dict = field(default_factory=dict)  # environment name -> J
    total_j: float = 0.0


def mission_energy(log, model: PowerModel = PowerModel()) -> EnergyBreakdown:
    """Integrate phase-appropriate power over the segments of a mission event log.

    The log's entries must be chronological; power is constant between entries
    since every command, morph-completion, and environment change is logged.
    """
    entries = log.entries
    if not entries:
        return EnergyBreakdown({}, 0.0)
    if any(a.time_s > b.time_s for a, b in zip(entries, entries[1:])):
        raise DomainError("event log must be chronological")

    per_phase: dict[str, float] = {}
    crawling = swimming = morphing = False
    env = entries[0].snapshot.environment.value if entries[0].snapshot else "unknown"

    def power():
        p = model.baseline_power_w
        if crawling:
            p += model.crawl_power_w
        if swimming:
            p += model.swim_power_w
        if morphing:
            p += model.actuator_power_w
        return p

    prev_t = entries[0].time_s
    for entry in entries:
        seg = (entry.time_s - prev_t) * power()
        if seg:
            per_phase[env] = per_phase.get(env, 0.0) + seg
        prev_t = entry.time_s

        if entry.kind == "command":
            cmd = entry.detail
            if cmd in ("crawl_fwd", "crawl_back"):
                crawling, swimming = True, False
            elif cmd in ("swim_fwd", "swim_back"):
                crawling, swimming = False, True
            elif cmd == "halt":
                crawling = swimming = False
        elif entry.kind == "morph_effect":
            morphing = entry.detail in ("expand", "compress")
        elif entry.kind == "morph_complete":
            morphing = False
        elif entry.kind == "transition":
            env = entry.detail.split("->")[-1]

    return EnergyBreakdown(per_phase, sum(per_phase.values()))
