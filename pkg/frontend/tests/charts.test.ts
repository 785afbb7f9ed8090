import { describe, expect, it } from "vitest";

import { layoutLineChart, linearScale, tableSeries, tableToCsv } from "../src/charts.js";
import { TableJson } from "../src/types.js";

const SWEEP: TableJson = {
  columns: ["delay", "lambda", "p_coincidence"],
  rows: [
    [-2.0, 0.36787944117144233, 0.31606027941427883],
    [0.0, 1.0, 0.0],
    [2.0, 0.36787944117144233, 0.31606027941427883],
  ],
};

describe("scales and layout", () => {
  it("maps domain ends onto range ends", () => {
    const s = linearScale([-5, 5], [0, 100]);
    expect(s.apply(-5)).toBe(0);
    expect(s.apply(5)).toBe(100);
    expect(s.apply(0)).toBe(50);
  });

  it("puts the dip minimum at the lowest pixel y", () => {
    const { xs, ys } = tableSeries(SWEEP, "delay", "p_coincidence");
    const layout = layoutLineChart(xs, ys, 400, 200);
    // pixel y grows downward, so the zero-delay point has the LARGEST y
    const yAtZero = layout.points[1].y;
    expect(yAtZero).toBeGreaterThan(layout.points[0].y);
    expect(yAtZero).toBeGreaterThan(layout.points[2].y);
    expect(yAtZero).toBe(200); // sits on the y=0 axis line
  });

  it("skips non-numeric rows", () => {
    const table: TableJson = {
      columns: ["delay", "p"],
      rows: [[0, 0.5], ["n/a", 0.1], [1, null]],
    };
    const { xs, ys } = tableSeries(table, "delay", "p");
    expect(xs).toEqual([0]);
    expect(ys).toEqual([0.5]);
  });

  it("refuses empty series", () => {
    expect(() => layoutLineChart([], [], 10, 10)).toThrow(/non-empty/);
  });
});

describe("CSV export", () => {
  it("writes floats at 17 significant digits, matching engine exports", () => {
    const csv = tableToCsv(SWEEP);
    const lines = csv.split("\n");
    expect(lines[0]).toBe("delay,lambda,p_coincidence");
    expect(lines[2]).toBe("0,1,0");
    expect(lines[1]).toContain("0.36787944117144233");
    expect(csv.endsWith("\n")).toBe(true);
  });

  it("quotes cells containing commas or quotes", () => {
    const csv = tableToCsv({ columns: ["a"], rows: [['say "hi", ok']] });
    expect(csv.split("\n")[1]).toBe('"say ""hi"", ok"');
  });

  it("renders nulls as empty cells", () => {
    const csv = tableToCsv({ columns: ["a", "b"], rows: [[null, 1]] });
    expect(csv.split("\n")[1]).toBe(",1");
  });
});
