/** Shared shapes for qsim_graph_v1 documents, the device catalog, and run results. */

export const SCHEMA_VERSION = "qsim_graph_v1";

/** Canonical parameter value as it appears in a document: complex is [re, im]. */
export type ParamValue = number | string | [number, number] | null;

export interface DeviceEntry {
  id: string;
  type: string;
  parameters: Record<string, ParamValue>;
  ui?: Record<string, unknown>;
}

export interface ConnectionEntry {
  from: string; // "device.port"
  to: string;
}

export interface SimSettings {
  until: string;
  seed: number | null;
  cutoff: number | null;
  options: Record<string, unknown>;
}

export interface GraphDocument {
  version: string;
  devices: DeviceEntry[];
  connections: ConnectionEntry[];
  sim: SimSettings;
  ui?: Record<string, unknown>;
}

export function defaultSim(): SimSettings {
  return { until: "1.0", seed: null, cutoff: null, options: {} };
}

// --- device catalog (GET /devices) ---

export interface PortSpec {
  name: string;
  direction: "input" | "output";
  accepts: string; // signal kind name
}

export interface ParamSpec {
  name: string;
  type: "number" | "string" | "complex" | "integer";
  default: ParamValue;
  required: boolean;
  description: string;
  choices?: string[];
}

export interface CatalogDevice {
  name: string;
  summary: string;
  ports: PortSpec[];
  parameters: ParamSpec[];
}

export interface SignalKindEntry {
  name: string;
  parent: string | null;
}

export interface Catalog {
  devices: CatalogDevice[];
  signal_kinds: SignalKindEntry[];
}

// --- validation and results ---

export interface ValidationError {
  error: string;
  pointer: string;
}

export type RunState = "queued" | "running" | "done" | "error";

export interface RunStatus {
  run_id: string;
  status: RunState;
  error: string | null;
}

export interface TableJson {
  columns: string[];
  rows: (number | string | null)[][];
}

export interface GridJson {
  x_axis: number[];
  p_axis: number[];
  values: number[]; // row-major: values[i * p_axis.length + j] = W(x_i, p_j)
}

export interface ResultSetJson {
  run_id: string;
  traces: Record<string, string>;
  tables: Record<string, TableJson>;
  grids: Record<string, GridJson>;
  metadata: Record<string, unknown>;
}
