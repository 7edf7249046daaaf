/** Operator console state: latest message, rolling chart buffers, staleness.
 *
 * Pure reducer over server messages so it can be exercised headlessly; the
 * UI computes no physics and renders only fields of the latest state message.
 */

import { RollingBuffer } from "./buffers.js";
import {
  Action,
  EnvName,
  ServerMessage,
  StateMessage,
  isActionLegal,
  parseServerMessage,
} from "./protocol.js";

export const STALE_AFTER_MS = 2000;

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export class ConsoleState {
  status: ConnectionStatus = "connecting";
  latest: StateMessage | null = null;
  lastError: string | null = null;
  /** wall-clock ms of the last state message, for staleness detection */
  lastStateWallMs: number | null = null;
  pendingAction: Action | null = null;
  readonly depth = new RollingBuffer(120);
  readonly height = new RollingBuffer(120);
  readonly netForce = new RollingBuffer(120);

  handleRaw(raw: string, nowMs: number): ServerMessage | null {
    const msg = parseServerMessage(raw);
    if (msg !== null) this.handleMessage(msg, nowMs);
    return msg;
  }

  handleMessage(msg: ServerMessage, nowMs: number): void {
    if (msg.type === "error") {
      this.lastError = msg.reason;
      return;
    }
    this.latest = msg;
    this.lastStateWallMs = nowMs;
    this.pendingAction = null;
    this.depth.push(msg.t, msg.depth_cm);
    this.height.push(msg.t, msg.height_cm);
    this.netForce.push(msg.t, msg.net_force_n);
  }

  /** True when connected but no state frame has arrived for STALE_AFTER_MS. */
  isStale(nowMs: number): boolean {
    if (this.status !== "connected" || this.lastStateWallMs === null) return false;
    return nowMs - this.lastStateWallMs > STALE_AFTER_MS;
  }

  env(): EnvName | null {
    return this.latest?.env ?? null;
  }

  /** Button affordance only; the service stays authoritative. */
  canSend(action: Action): boolean {
    if (this.status !== "connected" || this.latest === null) return false;
    return isActionLegal(action, this.latest.env);
  }

  noteSent(action: Action): void {
    this.pendingAction = action;
  }
}
