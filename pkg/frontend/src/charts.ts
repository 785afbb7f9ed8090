import { TableJson } from "./types.js";

export interface Scale {
  domain: [number, number];
  range: [number, number];
  apply(v: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return {
    domain,
    range,
    apply: (v: number) => r0 + ((v - d0) / span) * (r1 - r0),
  };
}

export interface LineChartLayout {
  points: { x: number; y: number }[];
  xScale: Scale;
  yScale: Scale;
  xTicks: number[];
  yTicks: number[];
}

/** Nice-ish ticks: 5 evenly spaced values across the domain. */
function ticks(lo: number, hi: number, count = 5): number[] {
  const out: number[] = [];
  for (let i = 0; i < count; i++) out.push(lo + ((hi - lo) * i) / (count - 1));
  return out;
}

/**
 * Lay out an x/y series inside a pixel box (margins already removed).
 * The y domain always includes 0 so probability curves sit on a real axis.
 */
export function layoutLineChart(
  xs: number[],
  ys: number[],
  width: number,
  height: number,
): LineChartLayout {
  if (xs.length !== ys.length || xs.length === 0) {
    throw new Error("layoutLineChart needs matching non-empty series");
  }
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(0, ...ys);
  const yHi = Math.max(...ys) || 1;
  const xScale = linearScale([xLo, xHi], [0, width]);
  const yScale = linearScale([yLo, yHi], [height, 0]); // pixel y grows downward
  return {
    points: xs.map((x, i) => ({ x: xScale.apply(x), y: yScale.apply(ys[i]) })),
    xScale,
    yScale,
    xTicks: ticks(xLo, xHi),
    yTicks: ticks(yLo, yHi),
  };
}

/** Pull two numeric columns out of a table by name. */
export function tableSeries(table: TableJson, xCol: string, yCol: string): { xs: number[]; ys: number[] } {
  const xi = table.columns.indexOf(xCol);
  const yi = table.columns.indexOf(yCol);
  if (xi < 0 || yi < 0) throw new Error(`table lacks columns ${xCol}/${yCol}`);
  const xs: number[] = [];
  const ys: number[] = [];
  const num = (v: number | string | null) => (v === null || v === "" ? NaN : Number(v));
  for (const row of table.rows) {
    const x = num(row[xi]);
    const y = num(row[yi]);
    if (Number.isFinite(x) && Number.isFinite(y)) {
      xs.push(x);
      ys.push(y);
    }
  }
  return { xs, ys };
}

function csvCell(v: number | string | null): string {
  if (v === null) return "";
  if (typeof v === "number") {
    return Number.isInteger(v) ? String(v) : v.toPrecision(17);
  }
  const s = String(v);
  return /[",\n]/.test(s) ? '"' + s.replace(/"/g, '""') + '"' : s;
}

/** Table to CSV text, matching the engine's 17-significant-digit float cells. */
export function tableToCsv(table: TableJson): string {
  const lines = [table.columns.join(",")];
  for (const row of table.rows) lines.push(row.map(csvCell).join(","));
  return lines.join("\n") + "\n";
}
