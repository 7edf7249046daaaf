/** Design-space CSV ingestion and heatmap cell mapping. */

export interface DesignGrid {
  masses_g: number[]; // ascending axis values
  heights_cm: number[];
  /** net[i][j] for heights_cm[i], masses_g[j], positive = floats */
  net: number[][];
}

export interface StarMarker {
  mass_g: number;
  height_cm: number;
  label: string;
}

/** The compressed and expanded operating points of the reference robot. */
export const STAR_MARKERS: StarMarker[] = [
  { mass_g: 330, height_cm: 4.5, label: "compressed" },
  { mass_g: 330, height_cm: 9.0, label: "expanded" },
];

export function parseDesignSpaceCsv(text: string): DesignGrid {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2 || lines[0] !== "mass_g,height_cm,net_force_n") {
    throw new Error(`unexpected design-space header: ${lines[0] ?? "<empty>"}`);
  }
  const masses = new Map<number, number>();
  const heights = new Map<number, number>();
  const rows: Array<[number, number, number]> = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i]!.split(",");
    if (cells.length !== 3) throw new Error(`bad row at line ${i + 1}`);
    const m = Number(cells[0]);
    const h = Number(cells[1]);
    const f = Number(cells[2]);
    if (![m, h, f].every(Number.isFinite)) throw new Error(`non-numeric row at line ${i + 1}`);
    if (!masses.has(m)) masses.set(m, masses.size);
    if (!heights.has(h)) heights.set(h, heights.size);
    rows.push([m, h, f]);
  }
  const masses_g = [...masses.keys()];
  const heights_cm = [...heights.keys()];
  const net: number[][] = heights_cm.map(() => new Array(masses_g.length).fill(NaN));
  for (const [m, h, f] of rows) {
    net[heights.get(h)!]![masses.get(m)!] = f;
  }
  if (net.some((row) => row.some((v) => !Number.isFinite(v)))) {
    throw new Error("design-space grid has missing cells");
  }
  return { masses_g, heights_cm, net };
}

/** Nearest grid indices for a marker; null when it falls outside the axes. */
export function markerCell(
  grid: DesignGrid,
  marker: StarMarker
): { row: number; col: number } | null {
  const col = nearestIndex(grid.masses_g, marker.mass_g);
  const row = nearestIndex(grid.heights_cm, marker.height_cm);
  if (col === null || row === null) return null;
  return { row, col };
}

function nearestIndex(axis: number[], value: number): number | null {
  if (axis.length === 0) return null;
  const lo = axis[0]!;
  const hi = axis[axis.length - 1]!;
  if (value < lo - 1e-9 || value > hi + 1e-9) return null;
  let best = 0;
  let bestDist = Infinity;
  for (let i = 0; i < axis.length; i++) {
    const d = Math.abs(axis[i]! - value);
    if (d < bestDist) {
      bestDist = d;
      best = i;
    }
  }
  return best;
}

export function netAtMarker(grid: DesignGrid, marker: StarMarker): number | null {
  const cell = markerCell(grid, marker);
  if (cell === null) return null;
  return grid.net[cell.row]![cell.col]!;
}
