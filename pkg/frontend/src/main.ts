/** Browser entry point: socket wiring, command panel, rendering loop. */

import { ConsoleState } from "./console.js";
import { parseDesignSpaceCsv } from "./designspace.js";
import { ACTIONS, Action, commandFrame, illegalReason } from "./protocol.js";
import {
  defaultTankLayout,
  drawGauge,
  drawHeatmap,
  drawStripChart,
  drawTank,
} from "./render.js";

const BATTERY_CAPACITY_J = 13320; // display only; battery_pct is authoritative

const state = new ConsoleState();
const layout = defaultTankLayout();
let socket: WebSocket | null = null;

const $ = (id: string) => document.getElementById(id)!;
const ctx2d = (id: string) =>
  ($(id) as HTMLCanvasElement).getContext("2d") as CanvasRenderingContext2D;

const ACTION_LABELS: Record<Action, string> = {
  crawl_fwd: "Crawl →",
  crawl_back: "← Crawl",
  swim_fwd: "Swim →",
  swim_back: "← Swim",
  expand: "Expand",
  compress: "Compress",
  stop_morph: "Stop morph",
  halt: "Halt",
};

function connect(): void {
  const url = `ws://${location.host}/ws`;
  state.status = "connecting";
  socket = new WebSocket(url);
  socket.onopen = () => {
    state.status = "connected";
  };
  socket.onmessage = (ev) => {
    state.handleRaw(String(ev.data), performance.now());
  };
  socket.onclose = () => {
    state.status = "disconnected";
    socket = null;
  };
  socket.onerror = () => {
    socket?.close();
  };
}

function buildCommandPanel(): void {
  const panel = $("commands");
  for (const action of ACTIONS) {
    const btn = document.createElement("button");
    btn.id = `btn-${action}`;
    btn.textContent = ACTION_LABELS[action];
    btn.onclick = () => {
      if (socket !== null && state.canSend(action)) {
        socket.send(commandFrame(action));
        state.noteSent(action);
      }
    };
    panel.appendChild(btn);
  }
}

function refreshCommandPanel(): void {
  const env = state.env();
  for (const action of ACTIONS) {
    const btn = $(`btn-${action}`) as HTMLButtonElement;
    const legal = state.canSend(action);
    btn.disabled = !legal;
    btn.title = env === null ? "not connected" : illegalReason(action, env) ?? "";
  }
}

function refreshStatus(now: number): void {
  const banner = $("banner");
  if (state.status !== "connected") {
    banner.textContent = state.status === "connecting" ? "connecting…" : "disconnected - reload to reconnect";
    banner.className = "banner warn";
  } else if (state.isStale(now)) {
    banner.textContent = "stale data - no state frames for over 2 s";
    banner.className = "banner stale";
  } else {
    banner.textContent = state.latest === null ? "waiting for state…" : `env: ${state.latest.env}`;
    banner.className = "banner ok";
  }
  const err = $("last-error");
  err.textContent = state.lastError === null ? "" : `last error: ${state.lastError}`;
}

function frame(): void {
  const now = performance.now();
  refreshStatus(now);
  refreshCommandPanel();
  const s = state.latest;
  if (s !== null) {
    drawTank(ctx2d("tank"), s, layout);
    drawStripChart(ctx2d("chart-depth"), state.depth, "depth cm", "#2266bb");
    drawStripChart(ctx2d("chart-height"), state.height, "height cm", "#bb6622");
    drawStripChart(ctx2d("chart-net"), state.netForce, "net N", "#228855");
    drawGauge($("gauge-energy"), "energy", s.energy_j, "J", s.energy_j / BATTERY_CAPACITY_J);
    drawGauge($("gauge-battery"), "battery", s.battery_pct, "%", s.battery_pct / 100);
    $("readout").textContent =
      `t=${s.t.toFixed(1)} s  x=${s.x_cm.toFixed(1)} cm  depth=${s.depth_cm.toFixed(1)} cm  ` +
      `fins=${s.fin_deg.toFixed(0)}°`;
  }
  requestAnimationFrame(frame);
}

async function loadHeatmap(): Promise<void> {
  try {
    const resp = await fetch("/design-space.csv");
    const grid = parseDesignSpaceCsv(await resp.text());
    drawHeatmap(ctx2d("heatmap"), grid);
  } catch (err) {
    $("heatmap-error").textContent = `design space unavailable: ${String(err)}`;
  }
}

function setupTabs(): void {
  $("tab-live").onclick = () => {
    $("live-view").hidden = false;
    $("design-view").hidden = true;
  };
  $("tab-design").onclick = () => {
    $("live-view").hidden = true;
    $("design-view").hidden = false;
  };
}

buildCommandPanel();
setupTabs();
connect();
void loadHeatmap();
requestAnimationFrame(frame);
