/** Wire protocol of the teleoperation service: newline-delimited JSON frames. */

export type EnvName =
  | "on_land"
  | "on_ramp"
  | "sinking"
  | "on_floor"
  | "ascending"
  | "at_surface";

export interface StateMessage {
  type: "state";
  t: number;
  x_cm: number;
  depth_cm: number;
  height_cm: number;
  fin_deg: number;
  env: EnvName;
  net_force_n: number;
  energy_j: number;
  battery_pct: number;
}

export interface ErrorMessage {
  type: "error";
  reason: string;
}

export type ServerMessage = StateMessage | ErrorMessage;

export type Action =
  | "expand"
  | "compress"
  | "stop_morph"
  | "crawl_fwd"
  | "crawl_back"
  | "swim_fwd"
  | "swim_back"
  | "halt";

export const ACTIONS: Action[] = [
  "crawl_fwd",
  "crawl_back",
  "swim_fwd",
  "swim_back",
  "expand",
  "compress",
  "stop_morph",
  "halt",
];

const ENV_NAMES = new Set<string>([
  "on_land",
  "on_ramp",
  "sinking",
  "on_floor",
  "ascending",
  "at_surface",
]);

export function isStateMessage(msg: unknown): msg is StateMessage {
  if (typeof msg !== "object" || msg === null) return false;
  const m = msg as Record<string, unknown>;
  if (m.type !== "state") return false;
  if (typeof m.env !== "string" || !ENV_NAMES.has(m.env)) return false;
  const numeric = [
    "t",
    "x_cm",
    "depth_cm",
    "height_cm",
    "fin_deg",
    "net_force_n",
    "energy_j",
    "battery_pct",
  ];
  return numeric.every((k) => typeof m[k] === "number" && Number.isFinite(m[k]));
}

export function isErrorMessage(msg: unknown): msg is ErrorMessage {
  if (typeof msg !== "object" || msg === null) return false;
  const m = msg as Record<string, unknown>;
  return m.type === "error" && typeof m.reason === "string";
}

export function parseServerMessage(raw: string): ServerMessage | null {
  let parsed: unknown;
  try {
    parsed = JSON.parse(raw);
  } catch {
    return null;
  }
  if (isStateMessage(parsed) || isErrorMessage(parsed)) return parsed;
  return null;
}

export function commandFrame(action: Action): string {
  return JSON.stringify({ type: "cmd", action });
}

/**
 * Client-side mirror of the service's command-legality rules, used only to
 * disable buttons; the service remains authoritative. Swimming needs the
 * surface, crawling needs ground contact; morph and halt are always accepted.
 */
export function isActionLegal(action: Action, env: EnvName): boolean {
  switch (action) {
    case "swim_fwd":
    case "swim_back":
      return env === "at_surface";
    case "crawl_fwd":
    case "crawl_back":
      return env === "on_land" || env === "on_ramp" || env === "on_floor";
    default:
      return true;
  }
}

export function illegalReason(action: Action, env: EnvName): string | null {
  if (isActionLegal(action, env)) return null;
  if (action.startsWith("swim")) return `cannot swim while ${env.replace("_", " ")}`;
  return `cannot crawl while ${env.replace("_", " ")}`;
}
