"""Execute a validated experiment graph and harvest results.

Every run produces the event trace plus two derived tables: ``detections``
(one row per detector event) and ``coincidence`` (one row per detector pair
that shares a joint two-mode state, which is how beam-splitter outputs
arrive). Optional harnesses under sim.options add more:

- ``hom_sweep``: rerun the graph over a list of envelope-center delays for
  one source and tabulate the overlap and coincidence probability per point.
- ``wigner``: attach a Wigner map of the reduced state seen by named
  detectors.
- ``jdr``: run the sequential joint-detection decoder alongside the graph.
"""

from __future__ import annotations

import copy
import decimal
import uuid

from ..des.engine import Graph, run
from ..des.simtime import SimTime
from ..devices.detectors import PhotonDetector
from ..devices.optics import NonPolarizingBeamSplitter
from ..errors import GraphValidationError
from ..fock.phase_space import default_phase_space_axes, wigner_grid
from ..fock.states import partial_trace
from ..temporal import coincidence_probability
from .graph_io import ExperimentSpec, build_graph, parse_experiment
from .jdr_run import run_jdr
from .results import ResultSet, Table

HOM_SWEEP_COLUMNS = ("delay", "lambda", "p_coincidence")


def _detection_tables(rs: ResultSet, graph: Graph) -> None:
    rows = []
    for dev in graph.devices.values():
        if not isinstance(dev, PhotonDetector):
            continue
        for record in dev.records:
            if "outcome" in record:
                value = float(record["outcome"])
            else:
                dist = record["distribution"]
                value = float(sum(n * p for n, p in enumerate(dist)))
            rows.append([dev.device_id, record["time"], dev.mode, value])
        if dev.records and "distribution" in dev.records[-1]:
            dist = dev.records[-1]["distribution"]
            rs.tables[f"counts_{dev.device_id}"] = Table(
                columns=["n", "probability"],
                rows=[[n, p] for n, p in enumerate(dist)],
            )
    if rows:
        rs.tables["detections"] = Table(
            columns=["device", "time", "mode", "value"], rows=rows
        )


def _detector_pairs(graph: Graph) -> list[tuple[PhotonDetector, PhotonDetector]]:
    by_handle: dict[int, list[PhotonDetector]] = {}
    for dev in graph.devices.values():
        if isinstance(dev, PhotonDetector) and dev.last_payload is not None:
            handle = dev.last_payload.handle
            if handle.num_modes == 2:
                by_handle.setdefault(id(handle), []).append(dev)
    pairs = []
    for dets in by_handle.values():
        if len(dets) == 2:
            a, b = sorted(dets, key=lambda d: d.last_payload.mode)
            pairs.append((a, b))
    return pairs


def _splitter_for_handle(graph: Graph, handle) -> NonPolarizingBeamSplitter | None:
    for dev in graph.devices.values():
        if isinstance(dev, NonPolarizingBeamSplitter) and dev.last_output_handle is handle:
            return dev
    return None


def _coincidence_table(rs: ResultSet, graph: Graph) -> None:
    rows = []
    for det_a, det_b in _detector_pairs(graph):
        handle = det_a.last_payload.handle
        splitter = _splitter_for_handle(graph, handle)
        lam = ""
        if splitter is not None and splitter.last_overlap is not None:
            lam = splitter.last_overlap.clipped
        rows.append(
            [det_a.device_id, det_b.device_id, lam, coincidence_probability(handle.state)]
        )
    if rows:
        rs.tables["coincidence"] = Table(
            columns=["detector_a", "detector_b", "lambda", "p_coincidence"], rows=rows
        )


def _respec_with_center(spec: ExperimentSpec, source_id: str, center: float) -> ExperimentSpec:
    obj = copy.deepcopy(spec.to_dict())
    obj["sim"]["options"] = {}
    for entry in obj["devices"]:
        if entry["id"] == source_id:
            entry["parameters"]["envelope_center"] = center
            break
    return parse_experiment(obj)


def sweep_envelope_center(spec: ExperimentSpec, source_id: str, delays) -> Table:
    """Rerun the graph once per delay, reading the first two-input splitter."""
    rows = []
    for delay in delays:
        point = _respec_with_center(spec, source_id, float(delay))
        graph, _ = build_graph(point)
        run(graph, SimTime(decimal.Decimal(point.sim.until)))
        pairs = _detector_pairs(graph)
        if not pairs:
            raise GraphValidationError(
                "hom_sweep needs two detectors fed by one beam splitter",
                pointer="/sim/options/hom_sweep",
            )
        det_a, det_b = pairs[0]
        splitter = _splitter_for_handle(graph, det_a.last_payload.handle)
        if splitter is None or splitter.last_overlap is None:
            raise GraphValidationError(
                "hom_sweep source never interfered with a second input",
                pointer="/sim/options/hom_sweep/source",
            )
        rows.append(
            [float(delay), splitter.last_overlap.clipped,
             coincidence_probability(det_a.last_payload.handle.state)]
        )
    return Table(columns=list(HOM_SWEEP_COLUMNS), rows=rows)


def _wigner_grids(rs: ResultSet, graph: Graph, entries: list) -> None:
    for entry in entries:
        dev = graph.device(entry["device"])
        if not isinstance(dev, PhotonDetector) or dev.last_payload is None:
            raise GraphValidationError(
                f"wigner target {entry['device']!r} is not a detector that saw a signal",
                pointer="/sim/options/wigner",
            )
        payload = dev.last_payload
        state = payload.handle.state
        if state.num_modes > 1:
            state = partial_trace(state, payload.mode)
        span = float(entry.get("span", 5.0))
        points = int(entry.get("points", 101))
        x_axis, p_axis = default_phase_space_axes(span=span, points=points)
        rs.add_grid(f"wigner_{dev.device_id}", wigner_grid(state, x_axis, p_axis))


def run_experiment(spec: ExperimentSpec, run_id: str | None = None) -> ResultSet:
    graph, ctx = build_graph(spec)
    trace = run(graph, SimTime(decimal.Decimal(spec.sim.until)))
    rs = ResultSet(run_id or uuid.uuid4().hex)
    rs.traces["trace"] = trace.to_jsonl()
    rs.metadata.update(
        {
            "cutoff": ctx.cutoff.dim,
            "until": spec.sim.until,
            "seed": spec.sim.seed,
            "events": len(trace.events),
            "warnings": list(trace.warnings),
        }
    )
    _detection_tables(rs, graph)
    _coincidence_table(rs, graph)

    options = spec.sim.options
    hom = options.get("hom_sweep")
    if hom:
        rs.tables["hom_sweep"] = sweep_envelope_center(spec, hom["source"], hom["delays"])
    wigner = options.get("wigner")
    if wigner:
        _wigner_grids(rs, graph, wigner)
    jdr = options.get("jdr")
    if jdr:
        jdr_rs = run_jdr(
            jdr["message"],
            pulses=int(jdr.get("pulses", 3)),
            alpha=float(jdr.get("alpha", 0.4)),
            cutoff=ctx.cutoff,
            mode=jdr.get("mode", "probability"),
            seed=spec.sim.seed,
            start_index=int(jdr.get("start_index", 0)),
        )
        rs.tables.update(jdr_rs.tables)
        rs.grids.update(jdr_rs.grids)
        rs.metadata["jdr"] = {
            k: v for k, v in jdr_rs.metadata.items() if k != "experiment"
        }
    return rs
