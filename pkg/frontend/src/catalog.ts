import {
  Catalog,
  CatalogDevice,
  ParamSpec,
  ParamValue,
  PortSpec,
  SignalKindEntry,
} from "./types.js";

/**
 * Indexed view of the /devices payload: device/port lookup plus the signal
 * kind forest, so connection legality can be decided client-side with the
 * same subtype rule the engine applies.
 */
export class CatalogIndex {
  private byType = new Map<string, CatalogDevice>();
  private parents = new Map<string, string | null>();

  constructor(catalog: Catalog) {
    for (const dev of catalog.devices) this.byType.set(dev.name, dev);
    for (const kind of catalog.signal_kinds) this.parents.set(kind.name, kind.parent);
  }

  deviceTypes(): CatalogDevice[] {
    return [...this.byType.values()];
  }

  device(type: string): CatalogDevice | undefined {
    return this.byType.get(type);
  }

  port(type: string, portName: string): PortSpec | undefined {
    return this.byType.get(type)?.ports.find((p) => p.name === portName);
  }

  param(type: string, paramName: string): ParamSpec | undefined {
    return this.byType.get(type)?.parameters.find((p) => p.name === paramName);
  }

  /** Walk the kind forest: child is a subtype of ancestor (or the same kind). */
  isSubtype(child: string, ancestor: string): boolean {
    let node: string | null | undefined = child;
    while (node != null) {
      if (node === ancestor) return true;
      node = this.parents.get(node);
      if (node === undefined) return false; // unknown kind name
    }
    return false;
  }
}

/** Coerce a user-entered value to its canonical document form, or explain why not. */
export function coerceParam(spec: ParamSpec, raw: unknown): { value?: ParamValue; error?: string } {
  if (raw === null || raw === undefined || raw === "") {
    if (spec.required) return { error: `${spec.name} is required` };
    return { value: null };
  }
  switch (spec.type) {
    case "number": {
      const n = typeof raw === "number" ? raw : Number(raw);
      if (!Number.isFinite(n)) return { error: `${spec.name} must be a finite number` };
      return { value: n };
    }
    case "integer": {
      const n = typeof raw === "number" ? raw : Number(raw);
      if (!Number.isInteger(n)) return { error: `${spec.name} must be an integer` };
      return { value: n };
    }
    case "string": {
      const s = String(raw);
      if (spec.choices && !spec.choices.includes(s)) {
        return { error: `${spec.name} must be one of ${spec.choices.join(", ")}` };
      }
      return { value: s };
    }
    case "complex": {
      // accepted input forms: number, [re, im], or "re,im" text
      if (typeof raw === "number") {
        if (!Number.isFinite(raw)) return { error: `${spec.name} must be finite` };
        return { value: [raw, 0] };
      }
      if (Array.isArray(raw) && raw.length === 2) {
        const re = Number(raw[0]);
        const im = Number(raw[1]);
        if (!Number.isFinite(re) || !Number.isFinite(im)) {
          return { error: `${spec.name} components must be finite` };
        }
        return { value: [re, im] };
      }
      if (typeof raw === "string") {
        const parts = raw.split(",").map((s) => Number(s.trim()));
        if (parts.length <= 2 && parts.every((n) => Number.isFinite(n))) {
          return { value: [parts[0], parts.length === 2 ? parts[1] : 0] };
        }
      }
      return { error: `${spec.name} must be a complex value: re or re,im` };
    }
  }
}

export function kindForestFromEntries(entries: SignalKindEntry[]): Map<string, string | null> {
  return new Map(entries.map((e) => [e.name, e.parent]));
}
