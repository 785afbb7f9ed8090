import { GraphDocument } from "./types.js";

/**
 * Prebuilt Hong-Ou-Mandel delay sweep, field for field the same document the
 * CLI ships as its fixture: two single-photon sources into a 50:50 beam
 * splitter, one detector per output arm, and an 11-point sweep of the second
 * source's envelope center.
 */
export function homTemplate(): GraphDocument {
  return {
    version: "qsim_graph_v1",
    devices: [
      {
        id: "src_a",
        type: "single_photon_source",
        parameters: { time: 0.0, sigma: 1.0, omega: 0.0 },
      },
      {
        id: "src_b",
        type: "single_photon_source",
        parameters: { time: 0.0, sigma: 1.0, omega: 0.0, envelope_center: 0.0 },
      },
      { id: "bs", type: "beam_splitter", parameters: {} },
      { id: "det_a", type: "photon_detector", parameters: {} },
      { id: "det_b", type: "photon_detector", parameters: {} },
    ],
    connections: [
      { from: "src_a.out", to: "bs.in_a" },
      { from: "src_b.out", to: "bs.in_b" },
      { from: "bs.out_a", to: "det_a.in" },
      { from: "bs.out_b", to: "det_b.in" },
    ],
    sim: {
      until: "1.0",
      seed: null,
      cutoff: 4,
      options: {
        hom_sweep: {
          source: "src_b",
          delays: [-5.0, -4.0, -3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0],
        },
      },
    },
  };
}

/** Canvas positions for the template's five devices (left to right signal flow). */
export const HOM_LAYOUT: Record<string, { x: number; y: number }> = {
  src_a: { x: 40, y: 60 },
  src_b: { x: 40, y: 220 },
  bs: { x: 300, y: 140 },
  det_a: { x: 560, y: 60 },
  det_b: { x: 560, y: 220 },
};
