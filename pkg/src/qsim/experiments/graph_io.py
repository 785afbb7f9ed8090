"""Experiment-graph files: schema validation, load/save, graph building.

The on-disk format is JSON tagged "qsim_graph_v1": devices (id, type,
parameters), connections ("device.port" -> "device.port"), and sim settings
(until, seed, cutoff, options). Validation reports every problem with a JSON
pointer to the offending location; the same validator backs the CLI and the
HTTP service so their error lists match. A "ui" key at the top level or on a
device entry is reserved for editor layout data and passes through untouched.
"""

from __future__ import annotations

import decimal
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..des.engine import Graph, connect
from ..des.signals import SIGNAL_KINDS
from ..devices.registry import _COERCERS, BuildContext, DEVICE_CATALOG
from ..errors import GraphValidationError
from ..fock.operators import FockCutoff

SCHEMA_VERSION = "qsim_graph_v1"
DEFAULT_CUTOFF_DIM = 10
CUTOFF_ENV_VAR = "QSIM_CUTOFF"


def default_cutoff_dim() -> int:
    raw = os.environ.get(CUTOFF_ENV_VAR)
    if raw is None:
        return DEFAULT_CUTOFF_DIM
    try:
        dim = int(raw)
    except ValueError:
        raise GraphValidationError(f"{CUTOFF_ENV_VAR} must be an integer, got {raw!r}") from None
    if dim < 2:
        raise GraphValidationError(f"{CUTOFF_ENV_VAR} must be >= 2, got {dim}")
    return dim


@dataclass
class DeviceEntry:
    id: str
    type: str
    parameters: dict = field(default_factory=dict)
    ui: dict | None = None

    def to_dict(self) -> dict:
        out = {"id": self.id, "type": self.type, "parameters": self.parameters}
        if self.ui is not None:
            out["ui"] = self.ui
        return out


@dataclass
class SimSettings:
    until: str = "1.0"
    seed: int | None = None
    cutoff: int | None = None
    options: dict = field(default_factory=dict)

    def resolved_cutoff(self) -> int:
        return self.cutoff if self.cutoff is not None else default_cutoff_dim()

    def to_dict(self) -> dict:
        return {"until": self.until, "seed": self.seed, "cutoff": self.cutoff, "options": self.options}


@dataclass
class ExperimentSpec:
    devices: list[DeviceEntry] = field(default_factory=list)
    connections: list[dict] = field(default_factory=list)
    sim: SimSettings = field(default_factory=SimSettings)
    ui: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "version": SCHEMA_VERSION,
            "devices": [d.to_dict() for d in self.devices],
            "connections": [dict(c) for c in self.connections],
            "sim": self.sim.to_dict(),
        }
        if self.ui is not None:
            out["ui"] = self.ui
        return out


def _err(errors: list, pointer: str, message: str) -> None:
    errors.append({"error": message, "pointer": pointer})


def _canonical_param(value, spec):
    coerced = _COERCERS[spec.type](spec.name, value)
    if spec.choices is not None and coerced not in spec.choices:
        raise ValueError(f"must be one of {list(spec.choices)}, got {coerced!r}")
    if spec.type == "complex":
        return [coerced.real, coerced.imag]
    return coerced


def _validate_device(entry, i: int, errors: list, seen_ids: dict) -> DeviceEntry | None:
    ptr = f"/devices/{i}"
    if not isinstance(entry, dict):
        _err(errors, ptr, "device entry must be an object")
        return None
    dev_id = entry.get("id")
    if not isinstance(dev_id, str) or not dev_id:
        _err(errors, f"{ptr}/id", "device id must be a non-empty string")
        return None
    if dev_id in seen_ids:
        _err(errors, f"{ptr}/id", f"duplicate device id {dev_id!r} (first at /devices/{seen_ids[dev_id]})")
        return None
    seen_ids[dev_id] = i
    type_name = entry.get("type")
    if not isinstance(type_name, str) or type_name not in DEVICE_CATALOG:
        _err(
            errors, f"{ptr}/type",
            f"unknown device type {type_name!r}; known: {sorted(DEVICE_CATALOG)}",
        )
        return None
    unknown_keys = sorted(set(entry) - {"id", "type", "parameters", "ui"})
    if unknown_keys:
        _err(errors, ptr, f"unknown device key(s) {unknown_keys}")
    raw_params = entry.get("parameters", {})
    if not isinstance(raw_params, dict):
        _err(errors, f"{ptr}/parameters", "parameters must be an object")
        return None
    dtype = DEVICE_CATALOG[type_name]
    specs = {p.name: p for p in dtype.params}
    params: dict = {}
    ok = True
    for name, value in raw_params.items():
        if name not in specs:
            _err(errors, f"{ptr}/parameters/{name}",
                 f"unknown parameter {name!r} for device type {type_name!r}")
            ok = False
            continue
        if value is None:
            continue
        try:
            params[name] = _canonical_param(value, specs[name])
        except ValueError as exc:
            _err(errors, f"{ptr}/parameters/{name}", str(exc))
            ok = False
    for spec in dtype.params:
        if spec.required and spec.name not in params:
            _err(errors, f"{ptr}/parameters",
                 f"missing required parameter {spec.name!r} for device type {type_name!r}")
            ok = False
    if not ok:
        return None
    ui = entry.get("ui")
    if ui is not None and not isinstance(ui, dict):
        _err(errors, f"{ptr}/ui", "ui extension must be an object")
        ui = None
    return DeviceEntry(id=dev_id, type=type_name, parameters=params, ui=ui)


def _split_ref(ref: str) -> tuple[str, str] | None:
    if not isinstance(ref, str):
        return None
    dev, sep, port = ref.partition(".")
    if not sep or not dev or not port:
        return None
    return dev, port


def _validate_connection(entry, j: int, devices: dict, errors: list, used_out: dict, used_in: dict):
    ptr = f"/connections/{j}"
    if not isinstance(entry, dict):
        _err(errors, ptr, "connection must be an object with 'from' and 'to'")
        return None
    unknown = sorted(set(entry) - {"from", "to"})
    if unknown:
        _err(errors, ptr, f"unknown connection key(s) {unknown}")
    ends = {}
    for key, want_dir in (("from", "output"), ("to", "input")):
        ref = entry.get(key)
        split = _split_ref(ref)
        if split is None:
            _err(errors, f"{ptr}/{key}", f"{key!r} must be a 'device.port' string")
            return None
        dev_id, port_name = split
        dev = devices.get(dev_id)
        if dev is None:
            _err(errors, f"{ptr}/{key}", f"unknown device {dev_id!r}")
            return None
        dtype = DEVICE_CATALOG[dev.type]
        port = next((p for p in dtype.ports if p["name"] == port_name), None)
        if port is None:
            _err(errors, f"{ptr}/{key}",
                 f"device {dev_id!r} ({dev.type}) has no port {port_name!r}")
            return None
        if port["direction"] != want_dir:
            _err(errors, f"{ptr}/{key}",
                 f"{dev_id}.{port_name} is an {port['direction']} port, expected {want_dir}")
            return None
        ends[key] = (dev_id, port_name, SIGNAL_KINDS[port["accepts"]])
    out_kind = ends["from"][2]
    in_kind = ends["to"][2]
    if not out_kind.is_subtype_of(in_kind):
        _err(errors, ptr,
             f"signal kind {out_kind.name} is not accepted by a port expecting {in_kind.name}")
        return None
    out_key = (ends["from"][0], ends["from"][1])
    in_key = (ends["to"][0], ends["to"][1])
    if out_key in used_out:
        _err(errors, f"{ptr}/from",
             f"output {out_key[0]}.{out_key[1]} already connected at /connections/{used_out[out_key]}")
        return None
    if in_key in used_in:
        _err(errors, f"{ptr}/to",
             f"input {in_key[0]}.{in_key[1]} already connected at /connections/{used_in[in_key]}")
        return None
    used_out[out_key] = j
    used_in[in_key] = j
    return {"from": f"{ends['from'][0]}.{ends['from'][1]}", "to": f"{ends['to'][0]}.{ends['to'][1]}"}


def _validate_options(options, devices: dict, errors: list) -> dict:
    out = dict(options)
    hom = options.get("hom_sweep")
    if hom is not None:
        if not isinstance(hom, dict):
            _err(errors, "/sim/options/hom_sweep", "hom_sweep must be an object")
        else:
            src = hom.get("source")
            if not isinstance(src, str) or src not in devices:
                _err(errors, "/sim/options/hom_sweep/source",
                     f"hom_sweep source must name a device, got {src!r}")
            delays = hom.get("delays")
            if not isinstance(delays, list) or not delays or not all(
                isinstance(d, (int, float)) and not isinstance(d, bool) for d in delays
            ):
                _err(errors, "/sim/options/hom_sweep/delays",
                     "hom_sweep delays must be a non-empty list of numbers")
            else:
                out["hom_sweep"] = {**hom, "delays": [float(d) for d in delays]}
    wigner = options.get("wigner")
    if wigner is not None:
        entries = wigner if isinstance(wigner, list) else [wigner]
        for k, w in enumerate(entries):
            if not isinstance(w, dict) or not isinstance(w.get("device"), str):
                _err(errors, f"/sim/options/wigner/{k}", "wigner entry must be {\"device\": id}")
            elif w["device"] not in devices:
                _err(errors, f"/sim/options/wigner/{k}/device", f"unknown device {w['device']!r}")
        out["wigner"] = entries
    jdr = options.get("jdr")
    if jdr is not None:
        if not isinstance(jdr, dict):
            _err(errors, "/sim/options/jdr", "jdr must be an object")
        else:
            pulses = jdr.get("pulses", 3)
            if not isinstance(pulses, int) or isinstance(pulses, bool) or pulses < 1:
                _err(errors, "/sim/options/jdr/pulses", "pulses must be a positive integer")
                pulses = None
            message = jdr.get("message")
            if not isinstance(message, int) or isinstance(message, bool):
                _err(errors, "/sim/options/jdr/message", "message must be an integer")
            elif pulses is not None and not 0 <= message < 2 ** pulses:
                _err(errors, "/sim/options/jdr/message",
                     f"message {message} outside 0..{2 ** pulses - 1}")
            mode = jdr.get("mode", "probability")
            if mode not in ("probability", "sample"):
                _err(errors, "/sim/options/jdr/mode", "mode must be probability or sample")
    return out


def validate_and_parse(obj) -> tuple[list[dict], ExperimentSpec | None]:
    """All schema/type errors with JSON pointers, plus the parsed spec if clean."""
    errors: list[dict] = []
    if not isinstance(obj, dict):
        _err(errors, "", "experiment graph must be a JSON object")
        return errors, None
    version = obj.get("version")
    if version != SCHEMA_VERSION:
        _err(errors, "/version", f"version must be {SCHEMA_VERSION!r}, got {version!r}")
    unknown = sorted(set(obj) - {"version", "devices", "connections", "sim", "ui"})
    if unknown:
        _err(errors, "", f"unknown top-level key(s) {unknown}")

    raw_devices = obj.get("devices", [])
    devices: list[DeviceEntry] = []
    by_id: dict[str, DeviceEntry] = {}
    if not isinstance(raw_devices, list):
        _err(errors, "/devices", "devices must be a list")
    else:
        seen: dict[str, int] = {}
        for i, entry in enumerate(raw_devices):
            dev = _validate_device(entry, i, errors, seen)
            if dev is not None:
                devices.append(dev)
                by_id[dev.id] = dev

    raw_connections = obj.get("connections", [])
    connections: list[dict] = []
    if not isinstance(raw_connections, list):
        _err(errors, "/connections", "connections must be a list")
    else:
        used_out: dict = {}
        used_in: dict = {}
        for j, entry in enumerate(raw_connections):
            conn = _validate_connection(entry, j, by_id, errors, used_out, used_in)
            if conn is not None:
                connections.append(conn)

    sim = SimSettings()
    raw_sim = obj.get("sim", {})
    if not isinstance(raw_sim, dict):
        _err(errors, "/sim", "sim must be an object")
    else:
        unknown = sorted(set(raw_sim) - {"until", "seed", "cutoff", "options"})
        if unknown:
            _err(errors, "/sim", f"unknown sim key(s) {unknown}")
        until = raw_sim.get("until", "1.0")
        if isinstance(until, (int, float)) and not isinstance(until, bool):
            until = repr(float(until)) if isinstance(until, float) else str(until)
        if not isinstance(until, str):
            _err(errors, "/sim/until", "until must be a decimal string or number")
        else:
            try:
                value = decimal.Decimal(until)
                if not value.is_finite() or value < 0:
                    raise decimal.InvalidOperation
                sim.until = until
            except decimal.InvalidOperation:
                _err(errors, "/sim/until", f"until must be a finite decimal >= 0, got {until!r}")
        seed = raw_sim.get("seed")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
            _err(errors, "/sim/seed", f"seed must be an integer or null, got {seed!r}")
        else:
            sim.seed = seed
        cutoff = raw_sim.get("cutoff")
        if cutoff is not None and (not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 2):
            _err(errors, "/sim/cutoff", f"cutoff must be an integer >= 2, got {cutoff!r}")
        else:
            sim.cutoff = cutoff
        options = raw_sim.get("options", {})
        if not isinstance(options, dict):
            _err(errors, "/sim/options", "options must be an object")
        else:
            sim.options = _validate_options(options, by_id, errors)

    ui = obj.get("ui")
    if ui is not None and not isinstance(ui, dict):
        _err(errors, "/ui", "ui extension must be an object")
        ui = None

    if errors:
        return errors, None
    return [], ExperimentSpec(devices=devices, connections=connections, sim=sim, ui=ui)


def validate_graph_dict(obj) -> list[dict]:
    errors, _ = validate_and_parse(obj)
    return errors


def parse_experiment(obj) -> ExperimentSpec:
    errors, spec = validate_and_parse(obj)
    if errors:
        first = errors[0]
        raise GraphValidationError(first["error"], pointer=first["pointer"], all_errors=errors)
    return spec


def load_experiment(path) -> ExperimentSpec:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise GraphValidationError(f"cannot read {p}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphValidationError(f"{p} is not valid JSON: {exc}") from exc
    return parse_experiment(obj)


def dump_experiment(spec: ExperimentSpec) -> str:
    return json.dumps(spec.to_dict(), indent=2) + "\n"


def save_experiment(spec: ExperimentSpec, path) -> Path:
    p = Path(path)
    p.write_text(dump_experiment(spec))
    return p


def build_graph(spec: ExperimentSpec) -> tuple[Graph, BuildContext]:
    """Instantiate catalog devices and wire the validated connections."""
    ctx = BuildContext(cutoff=FockCutoff(spec.sim.resolved_cutoff()), seed=spec.sim.seed)
    graph = Graph()
    for entry in spec.devices:
        graph.add_device(DEVICE_CATALOG[entry.type].build(entry.id, entry.parameters, ctx))
    for conn in spec.connections:
        connect(graph, conn["from"], conn["to"])
    return graph, ctx
