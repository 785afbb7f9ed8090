import { ApiClient, ApiError, pollRun } from "./api.js";
import { CatalogIndex } from "./catalog.js";
import { layoutLineChart, tableSeries, tableToCsv } from "./charts.js";
import { renderHeatmapRGBA } from "./colormap.js";
import { CanvasGraph, PortRef } from "./graph.js";
import { HOM_LAYOUT, homTemplate } from "./template.js";
import { GraphDocument, ResultSetJson, RunState, TableJson } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

interface AppState {
  client: ApiClient | null;
  catalog: CatalogIndex | null;
  graph: CanvasGraph | null;
  selectedNode: string | null;
  pendingPort: PortRef | null; // first click of a click-click connection
  nodeErrors: Map<string, string[]>;
  results: ResultSetJson | null;
  runState: RunState | null;
  polling: boolean;
}

const state: AppState = {
  client: null,
  catalog: null,
  graph: null,
  selectedNode: null,
  pendingPort: null,
  nodeErrors: new Map(),
  results: null,
  runState: null,
  polling: false,
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

// --- banner -----------------------------------------------------------------

let bannerTimer: ReturnType<typeof setTimeout> | null = null;

function banner(message: string, kind: "info" | "error" = "info", retry?: () => void) {
  const box = byId("banner");
  box.textContent = message;
  box.className = `banner ${kind}`;
  box.style.display = "block";
  if (retry) {
    const btn = el("button", { class: "retry" }, "retry");
    btn.onclick = () => {
      box.style.display = "none";
      retry();
    };
    box.append(" ", btn);
  }
  if (bannerTimer) clearTimeout(bannerTimer);
  if (!retry) bannerTimer = setTimeout(() => (box.style.display = "none"), 6000);
}

// --- connection to the engine -------------------------------------------------

async function connect() {
  const url = (byId("api-url") as HTMLInputElement).value.trim() || "http://127.0.0.1:8000";
  const client = new ApiClient(url);
  try {
    const catalog = await client.getCatalog();
    state.client = client;
    state.catalog = new CatalogIndex(catalog);
    if (!state.graph) state.graph = new CanvasGraph(state.catalog);
    renderPalette();
    renderCanvas();
    banner(`connected: ${catalog.devices.length} device types`);
  } catch (err) {
    banner(`cannot reach engine at ${url}: ${String(err)}`, "error", connect);
  }
}

// --- palette ------------------------------------------------------------------

function renderPalette() {
  const host = byId("palette");
  host.textContent = "";
  if (!state.catalog) return;
  for (const dev of state.catalog.deviceTypes()) {
    const item = el("div", { class: "palette-item", draggable: "true", title: dev.summary }, dev.name);
    item.addEventListener("dragstart", (ev) => {
      ev.dataTransfer?.setData("text/qsim-device", dev.name);
    });
    item.addEventListener("dblclick", () => {
      state.graph?.addDevice(dev.name, 80 + Math.random() * 120, 80 + Math.random() * 120);
      renderCanvas();
    });
    host.append(item);
  }
}

// --- canvas -------------------------------------------------------------------

function portTooltip(x: number, y: number, message: string) {
  const tip = byId("tooltip");
  tip.textContent = message;
  tip.style.left = `${x + 12}px`;
  tip.style.top = `${y + 12}px`;
  tip.style.display = "block";
  setTimeout(() => (tip.style.display = "none"), 2500);
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function renderCanvas() {
  const svg = byId("canvas") as unknown as SVGSVGElement;
  svg.textContent = "";
  const g = state.graph;
  if (!g || !state.catalog) return;

  for (let i = 0; i < g.edges.length; i++) {
    const edge = g.edges[i];
    const a = g.portAnchor(edge.from.node, edge.from.port);
    const b = g.portAnchor(edge.to.node, edge.to.port);
    if (!a || !b) continue;
    const mid = (a.x + b.x) / 2;
    const path = svgEl("path", {
      d: `M ${a.x} ${a.y} C ${mid} ${a.y}, ${mid} ${b.y}, ${b.x} ${b.y}`,
      class: edge.valid ? "edge" : "edge invalid",
    });
    if (edge.error) {
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = edge.error;
      path.append(title);
    }
    path.addEventListener("dblclick", () => {
      g.disconnect(i);
      renderCanvas();
    });
    svg.append(path);
  }

  for (const node of g.nodes) {
    const dev = state.catalog.device(node.type);
    if (!dev) continue;
    const height = g.nodeHeight(node.id);
    const group = svgEl("g", { transform: `translate(${node.x}, ${node.y})` });
    const errs = state.nodeErrors.get(node.id);
    const rect = svgEl("rect", {
      width: "132",
      height: String(height),
      rx: "6",
      class:
        "node" +
        (state.selectedNode === node.id ? " selected" : "") +
        (errs && errs.length ? " bad" : ""),
    });
    if (errs && errs.length) {
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = errs.join("\n");
      rect.append(title);
    }
    group.append(rect);
    const label = svgEl("text", { x: "66", y: "17", class: "node-label" });
    label.textContent = node.id;
    group.append(label);

    for (const port of dev.ports) {
      const anchor = g.portAnchor(node.id, port.name)!;
      const circle = svgEl("circle", {
        cx: String(anchor.x - node.x),
        cy: String(anchor.y - node.y),
        r: "6",
        class: `port ${port.direction}`,
      });
      circle.addEventListener("click", (ev) => {
        ev.stopPropagation();
        handlePortClick(node.id, port.name, ev as MouseEvent);
      });
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent = `${port.name} (${port.direction}, ${port.accepts})`;
      circle.append(title);
      group.append(circle);
    }

    group.addEventListener("pointerdown", (ev) => startDrag(node.id, ev));
    group.addEventListener("click", () => {
      state.selectedNode = node.id;
      renderCanvas();
      renderParams();
    });
    svg.append(group);
  }
}

function handlePortClick(nodeId: string, portName: string, ev: MouseEvent) {
  const g = state.graph;
  if (!g || !state.catalog) return;
  const node = g.node(nodeId)!;
  const spec = state.catalog.port(node.type, portName);
  if (!spec) return;
  if (!state.pendingPort) {
    if (spec.direction !== "output") {
      portTooltip(ev.clientX, ev.clientY, "start a connection from an output port");
      return;
    }
    state.pendingPort = { node: nodeId, port: portName };
    portTooltip(ev.clientX, ev.clientY, `connecting from ${nodeId}.${portName}...`);
    return;
  }
  const from = state.pendingPort;
  state.pendingPort = null;
  const check = g.connect(from, { node: nodeId, port: portName });
  if (!check.ok) {
    portTooltip(ev.clientX, ev.clientY, check.reason ?? "connection refused");
  }
  renderCanvas();
}

function startDrag(nodeId: string, ev: PointerEvent) {
  const g = state.graph;
  if (!g) return;
  const node = g.node(nodeId);
  if (!node) return;
  const startX = ev.clientX;
  const startY = ev.clientY;
  const origX = node.x;
  const origY = node.y;
  const move = (e: PointerEvent) => {
    g.moveNode(nodeId, origX + (e.clientX - startX), origY + (e.clientY - startY));
    renderCanvas();
  };
  const up = () => {
    window.removeEventListener("pointermove", move);
    window.removeEventListener("pointerup", up);
  };
  window.addEventListener("pointermove", move);
  window.addEventListener("pointerup", up);
}

// --- parameter panel ------------------------------------------------------------

function renderParams() {
  const host = byId("params");
  host.textContent = "";
  const g = state.graph;
  if (!g || !state.catalog || !state.selectedNode) {
    host.append(el("p", { class: "hint" }, "select a device to edit parameters"));
    return;
  }
  const node = g.node(state.selectedNode);
  if (!node) return;
  const dev = state.catalog.device(node.type)!;
  host.append(el("h3", {}, `${node.id} (${node.type})`));

  for (const p of dev.parameters) {
    const row = el("label", { class: "param-row" }, `${p.name} `);
    const current = node.params[p.name];
    let input: HTMLInputElement | HTMLSelectElement;
    if (p.choices) {
      input = el("select");
      for (const c of p.choices) {
        const opt = el("option", { value: c }, c);
        if (current === c) opt.selected = true;
        input.append(opt);
      }
    } else {
      input = el("input", {
        value:
          current === undefined || current === null
            ? ""
            : Array.isArray(current)
              ? `${current[0]},${current[1]}`
              : String(current),
        placeholder: p.required ? "required" : "",
      });
    }
    input.title = p.description;
    input.addEventListener("change", () => {
      const err = g.setParam(node.id, p.name, input.value);
      if (err) {
        banner(err, "error");
      }
      renderCanvas();
    });
    row.append(input);
    host.append(row);
  }

  const remove = el("button", {}, "remove device");
  remove.onclick = () => {
    g.removeNode(node.id);
    state.selectedNode = null;
    renderCanvas();
    renderParams();
  };
  host.append(remove);
}

// --- sim settings -----------------------------------------------------------------

function readSimSettings(): string | null {
  const g = state.graph;
  if (!g) return "no graph";
  g.sim.until = (byId("sim-until") as HTMLInputElement).value || "1.0";
  const seedText = (byId("sim-seed") as HTMLInputElement).value.trim();
  const cutText = (byId("sim-cutoff") as HTMLInputElement).value.trim();
  g.sim.seed = seedText === "" ? null : Number(seedText);
  g.sim.cutoff = cutText === "" ? null : Number(cutText);
  const optsText = (byId("sim-options") as HTMLTextAreaElement).value.trim();
  if (optsText) {
    try {
      g.sim.options = JSON.parse(optsText);
    } catch (err) {
      return `options is not valid JSON: ${String(err)}`;
    }
  } else {
    g.sim.options = {};
  }
  return null;
}

function showSimSettings() {
  const g = state.graph;
  if (!g) return;
  (byId("sim-until") as HTMLInputElement).value = g.sim.until;
  (byId("sim-seed") as HTMLInputElement).value = g.sim.seed === null ? "" : String(g.sim.seed);
  (byId("sim-cutoff") as HTMLInputElement).value = g.sim.cutoff === null ? "" : String(g.sim.cutoff);
  (byId("sim-options") as HTMLTextAreaElement).value = Object.keys(g.sim.options).length
    ? JSON.stringify(g.sim.options, null, 1)
    : "";
}

// --- run --------------------------------------------------------------------------

function setRunState(s: RunState | null) {
  state.runState = s;
  const pill = byId("run-state");
  pill.textContent = s ?? "idle";
  pill.className = `pill ${s ?? "idle"}`;
}

async function runExperiment() {
  const g = state.graph;
  if (!g || !state.client) {
    banner("connect to the engine first", "error");
    return;
  }
  const settingsError = readSimSettings();
  if (settingsError) {
    banner(settingsError, "error");
    return;
  }
  const doc = g.toDocument();
  let errors;
  try {
    errors = await state.client.validate(doc);
  } catch (err) {
    banner(`engine unreachable: ${String(err)}`, "error", runExperiment);
    return;
  }
  const { nodeErrors, unmatched } = g.applyServerErrors(errors);
  state.nodeErrors = nodeErrors;
  renderCanvas();
  if (errors.length > 0) {
    const first = unmatched[0]?.error ?? errors[0].error;
    banner(`graph has ${errors.length} problem(s): ${first}`, "error");
    return;
  }
  try {
    setRunState("queued");
    state.polling = true;
    const runId = await state.client.submit(doc);
    const results = await pollRun(state.client, runId, {
      onStatus: (s) => setRunState(s.status),
    });
    state.results = results;
    renderResults();
  } catch (err) {
    setRunState("error");
    if (err instanceof ApiError && err.pointer) {
      const { nodeErrors: ne } = g.applyServerErrors([{ error: err.message, pointer: err.pointer }]);
      state.nodeErrors = ne;
      renderCanvas();
    }
    banner(`run failed: ${String(err)}`, "error");
  } finally {
    state.polling = false;
  }
}

// --- results ------------------------------------------------------------------------

function download(name: string, blob: Blob) {
  const a = el("a", { href: URL.createObjectURL(blob), download: name });
  document.body.append(a);
  a.click();
  a.remove();
}

function canvasPngButton(canvas: HTMLCanvasElement, name: string): HTMLButtonElement {
  const btn = el("button", {}, "png");
  btn.onclick = () => {
    canvas.toBlob((blob) => {
      if (blob) download(name, blob);
    });
  };
  return btn;
}

function htmlTable(table: TableJson): HTMLTableElement {
  const t = el("table", { class: "results-table" });
  const head = el("tr");
  for (const c of table.columns) head.append(el("th", {}, c));
  t.append(head);
  for (const row of table.rows) {
    const tr = el("tr");
    for (const cell of row) {
      tr.append(el("td", {}, cell === null ? "" : typeof cell === "number" ? formatNum(cell) : String(cell)));
    }
    t.append(tr);
  }
  return t;
}

function formatNum(v: number): string {
  if (Number.isInteger(v)) return String(v);
  const a = Math.abs(v);
  return a !== 0 && (a < 1e-3 || a >= 1e5) ? v.toExponential(4) : v.toPrecision(6);
}

function drawLineChart(canvas: HTMLCanvasElement, xs: number[], ys: number[], xLabel: string, yLabel: string) {
  const ctx = canvas.getContext("2d")!;
  const W = canvas.width;
  const H = canvas.height;
  const m = { left: 52, right: 14, top: 14, bottom: 34 };
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, W, H);
  const layout = layoutLineChart(xs, ys, W - m.left - m.right, H - m.top - m.bottom);
  ctx.save();
  ctx.translate(m.left, m.top);
  ctx.strokeStyle = "#ccc";
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  for (const t of layout.xTicks) {
    const px = layout.xScale.apply(t);
    ctx.beginPath();
    ctx.moveTo(px, 0);
    ctx.lineTo(px, H - m.top - m.bottom);
    ctx.stroke();
    ctx.fillText(t.toPrecision(3), px - 12, H - m.top - m.bottom + 16);
  }
  for (const t of layout.yTicks) {
    const py = layout.yScale.apply(t);
    ctx.beginPath();
    ctx.moveTo(0, py);
    ctx.lineTo(W - m.left - m.right, py);
    ctx.stroke();
    ctx.fillText(t.toPrecision(3), -46, py + 4);
  }
  ctx.strokeStyle = "#0a6cbd";
  ctx.lineWidth = 2;
  ctx.beginPath();
  layout.points.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
  ctx.stroke();
  ctx.fillStyle = "#0a6cbd";
  for (const p of layout.points) {
    ctx.beginPath();
    ctx.arc(p.x, p.y, 3, 0, Math.PI * 2);
    ctx.fill();
  }
  ctx.fillStyle = "#222";
  ctx.fillText(xLabel, (W - m.left - m.right) / 2 - 20, H - m.top - 12);
  ctx.save();
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, -(H - m.top - m.bottom) / 2 - 30, -38);
  ctx.restore();
  ctx.restore();
}

function drawHeatmap(canvas: HTMLCanvasElement, gridName: string, results: ResultSetJson): boolean {
  const grid = results.grids[gridName];
  if (!grid || !grid.x_axis?.length || !grid.p_axis?.length) return false;
  const img = renderHeatmapRGBA(grid);
  const off = document.createElement("canvas");
  off.width = img.width;
  off.height = img.height;
  // copy pins the buffer type ImageData expects across TS lib versions
  const rgba = new Uint8ClampedArray(img.pixels);
  off.getContext("2d")!.putImageData(new ImageData(rgba, img.width, img.height), 0, 0);
  const ctx = canvas.getContext("2d")!;
  ctx.imageSmoothingEnabled = false;
  ctx.fillStyle = "#fff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.drawImage(off, 0, 0, canvas.width, canvas.height);
  return true;
}

function renderResults() {
  const host = byId("results");
  host.textContent = "";
  const r = state.results;
  if (!r || (Object.keys(r.tables).length === 0 && Object.keys(r.grids).length === 0)) {
    host.append(el("p", { class: "hint" }, "no results"));
    return;
  }

  for (const [name, table] of Object.entries(r.tables)) {
    const section = el("details", { class: "result-section", open: "" });
    section.append(el("summary", {}, `table: ${name}`));
    const csvBtn = el("button", {}, "csv");
    csvBtn.onclick = () => download(`${name}.csv`, new Blob([tableToCsv(table)], { type: "text/csv" }));
    section.append(csvBtn);

    if (name === "hom_sweep") {
      const canvas = el("canvas", { width: "560", height: "300" });
      try {
        const { xs, ys } = tableSeries(table, "delay", "p_coincidence");
        drawLineChart(canvas, xs, ys, "delay", "p_coincidence");
        section.append(canvasPngButton(canvas, "hom_sweep.png"), el("br"), canvas);
      } catch {
        section.append(el("p", { class: "hint" }, "sweep table lacks plottable columns"));
      }
    }
    section.append(htmlTable(table));
    host.append(section);
  }

  for (const name of Object.keys(r.grids)) {
    const section = el("details", { class: "result-section", open: "" });
    section.append(el("summary", {}, `wigner: ${name}`));
    const canvas = el("canvas", { width: "320", height: "320" });
    if (drawHeatmap(canvas, name, r)) {
      const grid = r.grids[name];
      const csvBtn = el("button", {}, "csv");
      csvBtn.onclick = () => {
        const rows = grid.values.map((v, k) => {
          const i = Math.floor(k / grid.p_axis.length);
          const j = k % grid.p_axis.length;
          return [grid.x_axis[i], grid.p_axis[j], v];
        });
        const csv = tableToCsv({ columns: ["x", "p", "w"], rows });
        download(`${name}.csv`, new Blob([csv], { type: "text/csv" }));
      };
      section.append(canvasPngButton(canvas, `${name}.png`), csvBtn, el("br"), canvas);
    } else {
      section.append(el("p", { class: "hint" }, "grid is missing its axes"));
    }
    host.append(section);
  }

  if (r.metadata && Object.keys(r.metadata).length) {
    const section = el("details", { class: "result-section" });
    section.append(el("summary", {}, "metadata"));
    section.append(el("pre", {}, JSON.stringify(r.metadata, null, 1)));
    host.append(section);
  }
}

// --- file load/save -------------------------------------------------------------------

function saveGraphFile() {
  const g = state.graph;
  if (!g) return;
  const err = readSimSettings();
  if (err) {
    banner(err, "error");
    return;
  }
  const doc = g.toDocument();
  download("experiment.json", new Blob([JSON.stringify(doc, null, 2) + "\n"], { type: "application/json" }));
}

function loadGraphDoc(doc: GraphDocument) {
  if (!state.catalog) {
    banner("connect to the engine first", "error");
    return;
  }
  state.graph = CanvasGraph.fromDocument(doc, state.catalog);
  state.selectedNode = null;
  state.nodeErrors = new Map();
  showSimSettings();
  renderCanvas();
  renderParams();
}

function loadTemplate() {
  if (!state.catalog) {
    banner("connect to the engine first", "error");
    return;
  }
  const doc = homTemplate();
  for (const dev of doc.devices) {
    const pos = HOM_LAYOUT[dev.id];
    if (pos) dev.ui = { x: pos.x, y: pos.y };
  }
  loadGraphDoc(doc);
}

// --- bootstrap ---------------------------------------------------------------------------

export function init() {
  byId("connect").onclick = connect;
  byId("run").onclick = runExperiment;
  byId("template-hom").onclick = loadTemplate;
  byId("clear").onclick = () => {
    if (state.catalog) {
      state.graph = new CanvasGraph(state.catalog);
      state.selectedNode = null;
      state.nodeErrors = new Map();
      showSimSettings();
      renderCanvas();
      renderParams();
    }
  };
  byId("save-file").onclick = saveGraphFile;
  (byId("load-file") as HTMLInputElement).addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      loadGraphDoc(JSON.parse(await file.text()));
    } catch (err) {
      banner(`cannot load file: ${String(err)}`, "error");
    }
    input.value = "";
  });

  const svg = byId("canvas");
  svg.addEventListener("dragover", (ev) => ev.preventDefault());
  svg.addEventListener("drop", (ev) => {
    ev.preventDefault();
    const type = (ev as DragEvent).dataTransfer?.getData("text/qsim-device");
    if (!type || !state.graph) return;
    const rect = svg.getBoundingClientRect();
    state.graph.addDevice(
      type,
      (ev as DragEvent).clientX - rect.left - 66,
      (ev as DragEvent).clientY - rect.top - 13,
    );
    renderCanvas();
  });
  svg.addEventListener("click", () => {
    state.pendingPort = null;
  });

  renderParams();
  renderResults();
  setRunState(null);
  connect();
}
