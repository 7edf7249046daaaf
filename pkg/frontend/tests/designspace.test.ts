import { describe, expect, it } from "vitest";

import {
  STAR_MARKERS,
  markerCell,
  netAtMarker,
  parseDesignSpaceCsv,
} from "../src/designspace.js";

function sampleCsv(): string {
  // tiny grid in the service's row order (height-major), spanning the markers
  const masses = [200, 330, 500];
  const heights = [4, 4.5, 6.5, 9, 10];
  const lines = ["mass_g,height_cm,net_force_n"];
  for (const h of heights) {
    for (const m of masses) {
      const net = 0.00981 * (37.5 * h - 33.75 + 120) - (m / 1000) * 9.81;
      lines.push(`${m.toFixed(9)},${h.toFixed(9)},${net.toFixed(9)}`);
    }
  }
  return lines.join("\n") + "\n";
}

describe("design-space CSV", () => {
  it("parses axes and grid from the service's format", () => {
    const grid = parseDesignSpaceCsv(sampleCsv());
    expect(grid.masses_g).toEqual([200, 330, 500]);
    expect(grid.heights_cm).toEqual([4, 4.5, 6.5, 9, 10]);
    expect(grid.net.length).toBe(5);
    expect(grid.net[0]!.length).toBe(3);
  });

  it("rejects a wrong header or ragged rows", () => {
    expect(() => parseDesignSpaceCsv("a,b,c\n1,2,3\n")).toThrow(/header/);
    expect(() => parseDesignSpaceCsv("mass_g,height_cm,net_force_n\n1,2\n")).toThrow(/bad row/);
    expect(() =>
      parseDesignSpaceCsv("mass_g,height_cm,net_force_n\n1,2,zebra\n")
    ).toThrow(/non-numeric/);
  });

  it("places both star markers on the grid", () => {
    const grid = parseDesignSpaceCsv(sampleCsv());
    const cells = STAR_MARKERS.map((m) => markerCell(grid, m));
    expect(cells[0]).toEqual({ row: 1, col: 1 }); // (330 g, 4.5 cm)
    expect(cells[1]).toEqual({ row: 3, col: 1 }); // (330 g, 9.0 cm)
  });

  it("classifies the markers as sink and float", () => {
    const grid = parseDesignSpaceCsv(sampleCsv());
    const compressed = netAtMarker(grid, STAR_MARKERS[0]!);
    const expanded = netAtMarker(grid, STAR_MARKERS[1]!);
    expect(compressed!).toBeLessThan(0);
    expect(expanded!).toBeGreaterThan(0);
    expect(compressed!).toBeCloseTo(-0.735, 2);
    expect(expanded!).toBeCloseTo(0.92, 2);
  });

  it("returns null for markers outside the axes", () => {
    const grid = parseDesignSpaceCsv(sampleCsv());
    expect(markerCell(grid, { mass_g: 900, height_cm: 5, label: "x" })).toBeNull();
    expect(markerCell(grid, { mass_g: 330, height_cm: 20, label: "x" })).toBeNull();
  });
});
