import { GridJson } from "./types.js";

/**
 * Diverging colormap with the midpoint pinned to zero: negative values cool
 * down to blue, positive warm up to red, and 0 is near-white whatever the
 * data range is. Asymmetric data keeps the anchor because both sides share
 * one scale limit, max(|min|, |max|).
 */
export function divergingColor(t: number): [number, number, number] {
  const u = Math.max(-1, Math.min(1, t));
  if (u < 0) {
    // white -> blue
    const s = -u;
    return [
      Math.round(255 - 204 * s),
      Math.round(255 - 150 * s),
      Math.round(255 - 65 * s),
    ];
  }
  // white -> red
  return [
    Math.round(255 - 52 * u),
    Math.round(255 - 196 * u),
    Math.round(255 - 212 * u),
  ];
}

export interface HeatmapImage {
  width: number;
  height: number;
  /** RGBA, row 0 at the top = largest p value. */
  pixels: Uint8ClampedArray;
  /** Shared scale limit: color = value / limit. */
  limit: number;
}

/**
 * Rasterize a Wigner grid to RGBA. Grid values are row-major with x as the
 * slow axis; the image puts x left-to-right and p bottom-to-top.
 */
export function renderHeatmapRGBA(grid: GridJson): HeatmapImage {
  const nx = grid.x_axis.length;
  const np = grid.p_axis.length;
  if (grid.values.length !== nx * np) {
    throw new Error(`grid has ${grid.values.length} values for ${nx}x${np} axes`);
  }
  let lo = 0;
  let hi = 0;
  for (const v of grid.values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  const limit = Math.max(Math.abs(lo), Math.abs(hi), 1e-300);
  const pixels = new Uint8ClampedArray(nx * np * 4);
  for (let i = 0; i < nx; i++) {
    for (let j = 0; j < np; j++) {
      const v = grid.values[i * np + j];
      const [r, g, b] = divergingColor(v / limit);
      const row = np - 1 - j; // p increases upward
      const off = (row * nx + i) * 4;
      pixels[off] = r;
      pixels[off + 1] = g;
      pixels[off + 2] = b;
      pixels[off + 3] = 255;
    }
  }
  return { width: nx, height: np, pixels, limit };
}

/** Sample one pixel of a rendered heatmap as [r, g, b, a]. */
export function pixelAt(img: HeatmapImage, col: number, row: number): [number, number, number, number] {
  const off = (row * img.width + col) * 4;
  return [img.pixels[off], img.pixels[off + 1], img.pixels[off + 2], img.pixels[off + 3]];
}
