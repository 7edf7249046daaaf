"""Command-line interface for the simulator toolkit."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import calibration, dynamics, mission
from .config import load_config, save_config
from .errors import AmphisimError
from .hydrostatics import design_space, neutral_height, write_design_space_csv
from .locomotion import GaitMode, Terrain, terrain_speed
from .morphology import VolumeModel


def _volume_model(cfg, name: str) -> VolumeModel:
    if name == "prism":
        return replace(cfg.volume_model, variant=VolumeModel.prism().variant)
    if name == "affine":
        return replace(cfg.volume_model, variant=VolumeModel.affine().variant)
    raise AmphisimError(f"unknown volume model {name!r}")


def _parse_axis(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise AmphisimError(f"axis spec must be A:B:N, got {spec!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def cmd_neutral(args, cfg):
    model = _volume_model(cfg, args.model)
    solve = neutral_height(args.mass_g / 1000.0, model, cfg.fluid)
    if solve.has_root:
        print(f"neutral height: {solve.height_cm:.3f} cm ({args.model} model, {args.mass_g:g} g)")
    else:
        print(f"no neutral height in range: robot {solve.outcome.value.replace('_', ' ')}"
              + (f" (closed form {solve.height_cm:.3f} cm)" if solve.height_cm is not None else ""))
    return 0


def cmd_design_space(args, cfg):
    m_lo, m_hi, m_n = _parse_axis(args.mass_g)
    h_lo, h_hi, h_n = _parse_axis(args.height_cm)
    model = _volume_model(cfg, args.model)
    grid = design_space(
        mass_range_kg=(m_lo / 1000.0, m_hi / 1000.0),
        height_range_cm=(h_lo, h_hi),
        resolution=(m_n, h_n),
        model=model,
        fluid=cfg.fluid,
    )
    out = Path(args.out)
    curve = out.with_name("neutral_curve.csv")
    write_design_space_csv(grid, out, curve)
    print(f"wrote {out} ({h_n}x{m_n} cells) and {curve} ({len(grid.neutral_curve)} points)")
    return 0


def cmd_sink(args, cfg):
    params = cfg.sim_params()
    states = dynamics.simulate_depth(
        [(0.0, dynamics.MorphCommand.COMPRESS)],
        params,
        args.duration_s,
        dynamics.surface_start_state(params),
    )
    dynamics.write_trajectory_csv(states, params, args.out)
    departure = dynamics.transition_time(states, from_contact=dynamics.Contact.AT_SURFACE)
    arrival = dynamics.transition_time(states, to_contact=dynamics.Contact.ON_FLOOR)
    print(f"wrote {args.out}")
    if departure is not None and arrival is not None:
        print(f"surface departure {departure:.2f} s, floor contact {arrival:.2f} s "
              f"(sink segment {arrival - departure:.2f} s)")
    return 0


def cmd_mission(args, cfg):
    if args.script == "fig6":
        script = mission.default_fig6_script()
    else:
        script = mission.load_script(args.script)
    log, snapshots = mission.run_mission(script, cfg.sim_params(), cfg.gait, cfg.power)
    mission.write_mission_csv(snapshots, args.out)
    print(f"wrote {args.out} ({len(snapshots)} samples)")
    for entry in log.entries:
        if entry.kind in ("transition", "command_ignored"):
            print(f"  {entry.time_s:8.2f} s  {entry.kind}: {entry.detail}")
    return 0


def cmd_calibrate_drag(args, cfg):
    params = cfg.sim_params()
    if args.scenario == "drop":
        result = calibration.calibrate_drag(
            args.target_s, args.depth_cm, maneuver=args.maneuver, params=params
        )
        which = "cd_descend" if args.maneuver == "descend" else "cd_ascend"
    elif args.scenario == "sink":
        result = calibration.calibrate_sink_coefficient(args.target_s, params=params)
        which = "cd_descend"
    else:
        result = calibration.calibrate_ascent_coefficient(args.target_s, params=params)
        which = "cd_ascend"
    print(f"{which} = {result.coefficient:.3f} "
          f"(achieved {result.achieved_time_s:.3f} s in {result.iterations} iterations)")
    if args.write_config:
        cfg = replace(cfg, drag=replace(cfg.drag, **{which: result.coefficient}))
        save_config(cfg, args.write_config)
        print(f"wrote {args.write_config}")
    return 0


def cmd_speeds(args, cfg):
    rows = [
        ("crawl on land", GaitMode.CRAWL, Terrain.land()),
        ("crawl on underwater floor", GaitMode.CRAWL, Terrain.underwater_floor()),
        ("swim on water surface", GaitMode.SWIM, Terrain.water_surface()),
    ]
    for label, mode, terrain in rows:
        print(f"{label}: {terrain_speed(mode, terrain, cfg.gait):.2f} cm/s")
    return 0


def cmd_serve(args, cfg):
    from .server import serve

    frontend = args.frontend_dir
    if frontend is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        frontend = candidate if candidate.is_dir() else None
    print(f"serving teleop session on ws://127.0.0.1:{args.port}/ws "
          f"(time scale {args.time_scale}x)")
    serve(port=args.port, time_scale=args.time_scale, config=cfg,
          start=args.start, frontend_dir=frontend)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="amphisim",
        description="Shape-morphing amphibious robot simulator and design toolkit",
    )
    parser.add_argument("--config", help="JSON configuration file", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("neutral", help="solve the neutral-buoyancy body height")
    p.add_argument("--mass-g", type=float, required=True)
    p.add_argument("--model", choices=["prism", "affine"], default="prism")
    p.set_defaults(fn=cmd_neutral)

    p = sub.add_parser("design-space", help="net-force grid over mass x height")
    p.add_argument("--mass-g", default="200:500:61", help="A:B:N in grams")
    p.add_argument("--height-cm", default="4:10:61", help="A:B:N in cm")
    p.add_argument("--model", choices=["prism", "affine"], default="affine")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_design_space)

    p = sub.add_parser("sink", help="compress-at-surface sink trajectory")
    p.add_argument("--out", required=True)
    p.add_argument("--duration-s", type=float, default=120.0)
    p.set_defaults(fn=cmd_sink)

    p = sub.add_parser("mission", help="run a scripted mission ('fig6' for the builtin)")
    p.add_argument("script")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_mission)

    p = sub.add_parser("calibrate", help="fit free parameters")
    csub = p.add_subparsers(dest="what", required=True)
    pd = csub.add_parser("drag", help="fit a drag coefficient to a timing target")
    pd.add_argument("--target-s", type=float, required=True)
    pd.add_argument("--depth-cm", type=float, default=30.0)
    pd.add_argument("--scenario", choices=["drop", "sink", "ascent"], default="drop")
    pd.add_argument("--maneuver", choices=["descend", "ascend"], default="descend")
    pd.add_argument("--write-config", default=None)
    pd.set_defaults(fn=cmd_calibrate_drag)

    p = sub.add_parser("speeds", help="print calibrated terrain speeds")
    p.set_defaults(fn=cmd_speeds)

    p = sub.add_parser("serve", help="run the live teleoperation service")
    p.add_argument("--port", type=int, default=8732)
    p.add_argument("--time-scale", type=float, default=1.0)
    p.add_argument("--start", choices=["land", "floor", "surface"], default="floor")
    p.add_argument("--frontend-dir", default=None)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.fn(args, cfg)
    except AmphisimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
