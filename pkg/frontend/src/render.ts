/** Canvas rendering: tank side view, strip charts, gauges, heatmap. */

import { RollingBuffer } from "./buffers.js";
import { DesignGrid, STAR_MARKERS, markerCell } from "./designspace.js";
import { StateMessage } from "./protocol.js";

export const PX_PER_CM = 8;

export interface TankLayout {
  marginPx: number;
  surfaceYPx: number; // canvas y of depth 0
  floorDepthCm: number;
  tankLengthCm: number;
  originXCm: number; // world x drawn at the left edge
}

export function defaultTankLayout(): TankLayout {
  return {
    marginPx: 20,
    surfaceYPx: 20 + 10 * PX_PER_CM, // 10 cm of headroom above the water
    floorDepthCm: -30,
    tankLengthCm: 90,
    originXCm: 0,
  };
}

export function depthToY(depthCm: number, layout: TankLayout): number {
  return layout.surfaceYPx - depthCm * PX_PER_CM;
}

export function xToPx(xCm: number, layout: TankLayout): number {
  return layout.marginPx + (xCm - layout.originXCm) * PX_PER_CM;
}

export function drawTank(
  ctx: CanvasRenderingContext2D,
  state: StateMessage,
  layout: TankLayout
): void {
  const w = ctx.canvas.width;
  const floorY = depthToY(layout.floorDepthCm, layout);
  ctx.clearRect(0, 0, w, ctx.canvas.height);

  // water
  ctx.fillStyle = "#d7ecf7";
  ctx.fillRect(layout.marginPx, layout.surfaceYPx, layout.tankLengthCm * PX_PER_CM, floorY - layout.surfaceYPx);
  // surface and floor
  ctx.strokeStyle = "#3b7ea1";
  ctx.beginPath();
  ctx.moveTo(layout.marginPx, layout.surfaceYPx);
  ctx.lineTo(layout.marginPx + layout.tankLengthCm * PX_PER_CM, layout.surfaceYPx);
  ctx.stroke();
  ctx.strokeStyle = "#6b5a43";
  ctx.beginPath();
  ctx.moveTo(layout.marginPx, floorY);
  ctx.lineTo(layout.marginPx + layout.tankLengthCm * PX_PER_CM, floorY);
  ctx.stroke();
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  ctx.fillText("0 cm", 2, layout.surfaceYPx + 4);
  ctx.fillText(`${layout.floorDepthCm} cm`, 2, floorY + 4);

  drawRobot(ctx, state, layout);
}

export function drawRobot(
  ctx: CanvasRenderingContext2D,
  state: StateMessage,
  layout: TankLayout
): void {
  const bodyWidthCm = 9;
  const x = xToPx(state.x_cm, layout);
  const bottomY = depthToY(state.depth_cm, layout);
  const hPx = state.height_cm * PX_PER_CM;
  ctx.fillStyle = "#e0653a";
  ctx.fillRect(x - (bodyWidthCm * PX_PER_CM) / 2, bottomY - hPx, bodyWidthCm * PX_PER_CM, hPx);

  // fins on each side, pitched between flat (0) and vertical (90)
  const finLenPx = 3 * PX_PER_CM;
  const pitchRad = (state.fin_deg * Math.PI) / 180;
  const dx = Math.cos(pitchRad) * finLenPx;
  const dy = Math.sin(pitchRad) * finLenPx;
  ctx.strokeStyle = "#8c3b1d";
  ctx.lineWidth = 3;
  for (const side of [-1, 1]) {
    const fx = x + (side * bodyWidthCm * PX_PER_CM) / 2;
    ctx.beginPath();
    ctx.moveTo(fx, bottomY);
    ctx.lineTo(fx + side * dx, bottomY - dy);
    ctx.stroke();
  }
  ctx.lineWidth = 1;
}

export function drawStripChart(
  ctx: CanvasRenderingContext2D,
  buffer: RollingBuffer,
  label: string,
  color: string
): void {
  const w = ctx.canvas.width;
  const h = ctx.canvas.height;
  ctx.clearRect(0, 0, w, h);
  ctx.strokeStyle = "#ccc";
  ctx.strokeRect(0.5, 0.5, w - 1, h - 1);
  ctx.fillStyle = "#333";
  ctx.font = "11px sans-serif";
  const samples = buffer.all();
  const latest = buffer.latest();
  ctx.fillText(
    latest === undefined ? label : `${label}: ${latest.value.toFixed(2)}`,
    6,
    14
  );
  if (samples.length < 2 || latest === undefined) return;
  const t1 = latest.t;
  const t0 = t1 - buffer.windowS;
  const [lo, hi] = buffer.range();
  ctx.strokeStyle = color;
  ctx.beginPath();
  let started = false;
  for (const s of samples) {
    const px = ((s.t - t0) / buffer.windowS) * (w - 2) + 1;
    const py = h - 1 - ((s.value - lo) / (hi - lo)) * (h - 20);
    if (started) ctx.lineTo(px, py);
    else {
      ctx.moveTo(px, py);
      started = true;
    }
  }
  ctx.stroke();
}

export function drawGauge(
  el: HTMLElement,
  label: string,
  value: number,
  unit: string,
  fraction: number | null
): void {
  const pct = fraction === null ? "" : ` <span class="bar"><span style="width:${Math.max(0, Math.min(100, fraction * 100)).toFixed(1)}%"></span></span>`;
  el.innerHTML = `${label}: <b>${value.toFixed(1)}</b> ${unit}${pct}`;
}

/** Heatmap with the neutral boundary implicit in the color flip; stars marked. */
export function drawHeatmap(ctx: CanvasRenderingContext2D, grid: DesignGrid): void {
  const w = ctx.canvas.width;
  const h = ctx.canvas.height;
  ctx.clearRect(0, 0, w, h);
  const rows = grid.heights_cm.length;
  const cols = grid.masses_g.length;
  const cw = w / cols;
  const ch = h / rows;
  let maxAbs = 0;
  for (const row of grid.net) for (const v of row) maxAbs = Math.max(maxAbs, Math.abs(v));
  for (let i = 0; i < rows; i++) {
    for (let j = 0; j < cols; j++) {
      const v = grid.net[i]![j]!;
      const a = Math.min(1, Math.abs(v) / maxAbs);
      // blue = floats (positive net), red = sinks; height increases upward
      ctx.fillStyle = v >= 0 ? `rgba(40,90,200,${a})` : `rgba(200,60,40,${a})`;
      ctx.fillRect(j * cw, h - (i + 1) * ch, Math.ceil(cw), Math.ceil(ch));
    }
  }
  ctx.font = "16px sans-serif";
  ctx.fillStyle = "#ffd700";
  ctx.strokeStyle = "#000";
  for (const marker of STAR_MARKERS) {
    const cell = markerCell(grid, marker);
    if (cell === null) continue;
    const px = (cell.col + 0.5) * cw;
    const py = h - (cell.row + 0.5) * ch;
    drawStar(ctx, px, py, 8);
    ctx.fillStyle = "#222";
    ctx.font = "11px sans-serif";
    ctx.fillText(marker.label, px + 10, py + 4);
    ctx.fillStyle = "#ffd700";
    ctx.font = "16px sans-serif";
  }
}

function drawStar(ctx: CanvasRenderingContext2D, cx: number, cy: number, r: number): void {
  ctx.beginPath();
  for (let k = 0; k < 10; k++) {
    const radius = k % 2 === 0 ? r : r / 2.5;
    const a = (Math.PI / 5) * k - Math.PI / 2;
    const px = cx + radius * Math.cos(a);
    const py = cy + radius * Math.sin(a);
    if (k === 0) ctx.moveTo(px, py);
    else ctx.lineTo(px, py);
  }
  ctx.closePath();
  ctx.fill();
  ctx.stroke();
}
