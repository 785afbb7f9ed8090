import { CatalogIndex, coerceParam } from "./catalog.js";
import {
  ConnectionEntry,
  DeviceEntry,
  GraphDocument,
  ParamValue,
  SCHEMA_VERSION,
  SimSettings,
  ValidationError,
  defaultSim,
} from "./types.js";

export interface PortRef {
  node: string;
  port: string;
}

export interface CanvasNode {
  id: string;
  type: string;
  x: number;
  y: number;
  params: Record<string, ParamValue>;
}

export interface CanvasEdge {
  from: PortRef;
  to: PortRef;
  valid: boolean;
  error?: string;
}

export interface ConnectCheck {
  ok: boolean;
  reason?: string;
}

export const NODE_WIDTH = 132;
export const PORT_SPACING = 22;
export const NODE_HEADER = 26;

function parseRef(endpoint: string): PortRef | null {
  const dot = endpoint.lastIndexOf(".");
  if (dot <= 0 || dot === endpoint.length - 1) return null;
  return { node: endpoint.slice(0, dot), port: endpoint.slice(dot + 1) };
}

function refString(ref: PortRef): string {
  return `${ref.node}.${ref.port}`;
}

/**
 * Editable device graph backing the canvas. All legality decisions come from
 * the catalog so the client refuses exactly what the server would reject:
 * connections run output to input, one edge per port, and the producer's
 * signal kind must be a subtype of what the consumer accepts.
 */
export class CanvasGraph {
  nodes: CanvasNode[] = [];
  edges: CanvasEdge[] = [];
  sim: SimSettings = defaultSim();
  /** Top-level ui block (pan/zoom etc.) preserved across save/load. */
  extraUi: Record<string, unknown> = {};

  constructor(readonly catalog: CatalogIndex) {}

  node(id: string): CanvasNode | undefined {
    return this.nodes.find((n) => n.id === id);
  }

  /** Add a device of a catalog type; parameters start at catalog defaults. */
  addDevice(type: string, x: number, y: number, id?: string): CanvasNode {
    const dev = this.catalog.device(type);
    if (!dev) throw new Error(`unknown device type ${type}`);
    if (!Number.isFinite(x) || !Number.isFinite(y)) throw new Error("position must be finite");
    const nodeId = id ?? this.freshId(type);
    if (this.node(nodeId)) throw new Error(`duplicate device id ${nodeId}`);
    const params: Record<string, ParamValue> = {};
    for (const p of dev.parameters) {
      if (p.default !== null && p.default !== undefined) {
        const coerced = coerceParam(p, p.default);
        if (coerced.value !== undefined && coerced.value !== null) params[p.name] = coerced.value;
      }
    }
    const node: CanvasNode = { id: nodeId, type, x, y, params };
    this.nodes.push(node);
    return node;
  }

  freshId(type: string): string {
    let n = 1;
    while (this.node(`${type}_${n}`)) n += 1;
    return `${type}_${n}`;
  }

  moveNode(id: string, x: number, y: number): void {
    const node = this.node(id);
    if (!node) return;
    if (!Number.isFinite(x) || !Number.isFinite(y)) return;
    node.x = x;
    node.y = y;
  }

  removeNode(id: string): void {
    this.nodes = this.nodes.filter((n) => n.id !== id);
    this.edges = this.edges.filter((e) => e.from.node !== id && e.to.node !== id);
  }

  /** Set one parameter from user input; returns an error string instead of storing bad values. */
  setParam(id: string, name: string, raw: unknown): string | null {
    const node = this.node(id);
    if (!node) return `no device ${id}`;
    const spec = this.catalog.param(node.type, name);
    if (!spec) return `unknown parameter ${name}`;
    const { value, error } = coerceParam(spec, raw);
    if (error) return error;
    if (value === null) delete node.params[name];
    else node.params[name] = value!;
    return null;
  }

  /** Drop-time legality check mirroring the engine's connection rules. */
  canConnect(from: PortRef, to: PortRef): ConnectCheck {
    const fromNode = this.node(from.node);
    const toNode = this.node(to.node);
    if (!fromNode || !toNode) return { ok: false, reason: "unknown device" };
    const outPort = this.catalog.port(fromNode.type, from.port);
    const inPort = this.catalog.port(toNode.type, to.port);
    if (!outPort) return { ok: false, reason: `no port ${refString(from)}` };
    if (!inPort) return { ok: false, reason: `no port ${refString(to)}` };
    if (outPort.direction !== "output") {
      return { ok: false, reason: `${refString(from)} is not an output` };
    }
    if (inPort.direction !== "input") {
      return { ok: false, reason: `${refString(to)} is not an input` };
    }
    if (!this.catalog.isSubtype(outPort.accepts, inPort.accepts)) {
      return {
        ok: false,
        reason: `${outPort.accepts} does not flow into ${inPort.accepts}`,
      };
    }
    for (const e of this.edges) {
      if (e.from.node === from.node && e.from.port === from.port) {
        return { ok: false, reason: `${refString(from)} already connected` };
      }
      if (e.to.node === to.node && e.to.port === to.port) {
        return { ok: false, reason: `${refString(to)} already connected` };
      }
    }
    return { ok: true };
  }

  connect(from: PortRef, to: PortRef): ConnectCheck {
    const check = this.canConnect(from, to);
    if (check.ok) this.edges.push({ from, to, valid: true });
    return check;
  }

  disconnect(index: number): void {
    this.edges.splice(index, 1);
  }

  /** Anchor point of a port on the node box: inputs on the left edge, outputs on the right. */
  portAnchor(id: string, portName: string): { x: number; y: number } | null {
    const node = this.node(id);
    if (!node) return null;
    const dev = this.catalog.device(node.type);
    if (!dev) return null;
    const inputs = dev.ports.filter((p) => p.direction === "input");
    const outputs = dev.ports.filter((p) => p.direction === "output");
    const inIdx = inputs.findIndex((p) => p.name === portName);
    if (inIdx >= 0) return { x: node.x, y: node.y + NODE_HEADER + PORT_SPACING * (inIdx + 0.5) };
    const outIdx = outputs.findIndex((p) => p.name === portName);
    if (outIdx >= 0) {
      return { x: node.x + NODE_WIDTH, y: node.y + NODE_HEADER + PORT_SPACING * (outIdx + 0.5) };
    }
    return null;
  }

  nodeHeight(id: string): number {
    const node = this.node(id);
    const dev = node && this.catalog.device(node.type);
    if (!dev) return NODE_HEADER;
    const inputs = dev.ports.filter((p) => p.direction === "input").length;
    const outputs = dev.ports.length - inputs;
    return NODE_HEADER + PORT_SPACING * Math.max(inputs, outputs, 1) + 6;
  }

  /** Serialize to a qsim_graph_v1 document; positions ride under per-device "ui". */
  toDocument(opts: { includeUi?: boolean } = {}): GraphDocument {
    const includeUi = opts.includeUi ?? true;
    const devices: DeviceEntry[] = this.nodes.map((n) => {
      const entry: DeviceEntry = {
        id: n.id,
        type: n.type,
        parameters: { ...n.params },
      };
      if (includeUi) entry.ui = { x: n.x, y: n.y };
      return entry;
    });
    const connections: ConnectionEntry[] = this.edges.map((e) => ({
      from: refString(e.from),
      to: refString(e.to),
    }));
    const doc: GraphDocument = {
      version: SCHEMA_VERSION,
      devices,
      connections,
      sim: {
        until: this.sim.until,
        seed: this.sim.seed,
        cutoff: this.sim.cutoff,
        options: JSON.parse(JSON.stringify(this.sim.options)),
      },
    };
    if (includeUi && Object.keys(this.extraUi).length > 0) {
      doc.ui = JSON.parse(JSON.stringify(this.extraUi));
    }
    return doc;
  }

  /** Load a document; devices without saved positions get a fallback grid layout. */
  static fromDocument(doc: GraphDocument, catalog: CatalogIndex): CanvasGraph {
    if (doc.version !== SCHEMA_VERSION) {
      throw new Error(`unsupported version ${doc.version}`);
    }
    const g = new CanvasGraph(catalog);
    doc.devices.forEach((dev, i) => {
      const ui = dev.ui ?? {};
      const x = typeof ui["x"] === "number" ? (ui["x"] as number) : 60 + (i % 3) * 220;
      const y = typeof ui["y"] === "number" ? (ui["y"] as number) : 60 + Math.floor(i / 3) * 140;
      const node: CanvasNode = {
        id: dev.id,
        type: dev.type,
        x,
        y,
        params: { ...dev.parameters },
      };
      g.nodes.push(node);
    });
    for (const conn of doc.connections) {
      const from = parseRef(conn.from);
      const to = parseRef(conn.to);
      if (!from || !to) throw new Error(`malformed connection ${conn.from} -> ${conn.to}`);
      g.edges.push({ from, to, valid: true });
    }
    g.sim = {
      until: doc.sim.until,
      seed: doc.sim.seed ?? null,
      cutoff: doc.sim.cutoff ?? null,
      options: JSON.parse(JSON.stringify(doc.sim.options ?? {})),
    };
    if (doc.ui) g.extraUi = JSON.parse(JSON.stringify(doc.ui));
    return g;
  }

  /**
   * Mark elements from server validation errors. /connections/i pointers set
   * the edge's valid flag; /devices/i pointers return per-node messages.
   * Unmatched errors come back for a banner.
   */
  applyServerErrors(errors: ValidationError[]): {
    nodeErrors: Map<string, string[]>;
    unmatched: ValidationError[];
  } {
    for (const e of this.edges) {
      e.valid = true;
      delete e.error;
    }
    const nodeErrors = new Map<string, string[]>();
    const unmatched: ValidationError[] = [];
    for (const err of errors) {
      const conn = err.pointer.match(/^\/connections\/(\d+)/);
      const dev = err.pointer.match(/^\/devices\/(\d+)/);
      if (conn) {
        const edge = this.edges[Number(conn[1])];
        if (edge) {
          edge.valid = false;
          edge.error = err.error;
          continue;
        }
      } else if (dev) {
        const node = this.nodes[Number(dev[1])];
        if (node) {
          const list = nodeErrors.get(node.id) ?? [];
          list.push(err.error);
          nodeErrors.set(node.id, list);
          continue;
        }
      }
      unmatched.push(err);
    }
    return { nodeErrors, unmatched };
  }
}
