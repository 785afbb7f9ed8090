"""Deterministic discrete-event simulation engine.

Devices expose typed ports; connections are checked against the signal-kind
hierarchy when made. The engine owns scheduling: device actions RETURN their
emissions and the engine routes each one along the recorded connection,
enqueueing an event at the destination. Events pop in (time, target device
id, sequence) order, and all events sharing (time, target) merge into a
single delivery, so a device sees simultaneous arrivals together.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from ..errors import (
    CausalityViolationError,
    ConnectionError_,
    PortTypeMismatchError,
    SimultaneityConflictError,
)
from .signals import Signal, SignalKind
from .simtime import TIME_ZERO, SimTime


@dataclass(frozen=True)
class Port:
    name: str
    direction: str
    accepts: SignalKind

    def __post_init__(self):
        if self.direction not in ("input", "output"):
            raise ValueError(f"port direction must be input or output, got {self.direction!r}")


@dataclass(frozen=True)
class Emission:
    """A signal leaving a device: output port name, payload, departure time."""

    port: str
    signal: Signal
    time: SimTime


class Device:
    """Behavioral interface for everything that lives in a graph.

    Subclasses declare ports, optionally emit at initialization, and react to
    merged input deliveries. Actions must be deterministic in their inputs
    and internal state, and must not emit into the past.
    """

    def __init__(self, device_id: str):
        self.device_id = device_id

    def ports(self) -> tuple[Port, ...]:
        raise NotImplementedError

    def port(self, name: str) -> Port:
        for p in self.ports():
            if p.name == name:
                return p
        raise KeyError(f"device {self.device_id!r} has no port {name!r}")

    def init_action(self) -> list[Emission]:
        return []

    def event_action(self, time: SimTime, inputs: dict[str, Signal]) -> list[Emission]:
        return []

    def trace_summary(self, time: SimTime, inputs: dict[str, Signal], emissions: list[Emission]) -> str:
        return f"{type(self).__name__} handled {sorted(inputs)}"


@dataclass
class Graph:
    devices: dict[str, Device] = field(default_factory=dict)
    connections: dict[tuple[str, str], tuple[str, str]] = field(default_factory=dict)

    def add_device(self, device: Device) -> Device:
        if device.device_id in self.devices:
            raise ConnectionError_(f"duplicate device id {device.device_id!r}")
        self.devices[device.device_id] = device
        return device

    def device(self, device_id: str) -> Device:
        try:
            return self.devices[device_id]
        except KeyError:
            raise ConnectionError_(f"unknown device {device_id!r}") from None


def _resolve(graph: Graph, ref) -> tuple[Device, Port]:
    if isinstance(ref, str):
        dev_id, _, port_name = ref.partition(".")
        if not port_name:
            raise ConnectionError_(f"port reference {ref!r} must be 'device.port'")
    else:
        dev_id, port_name = ref
    dev = graph.device(dev_id)
    return dev, dev.port(port_name)


def connect(graph: Graph, out_ref, in_ref) -> Graph:
    """Record an edge out_ref -> in_ref after direction and kind checks.

    Each port carries at most one connection; quantum signals cannot be
    cloned, so fan-out needs an explicit splitting device.
    """
    out_dev, out_port = _resolve(graph, out_ref)
    in_dev, in_port = _resolve(graph, in_ref)
    if out_port.direction != "output":
        raise ConnectionError_(f"{out_dev.device_id}.{out_port.name} is not an output port")
    if in_port.direction != "input":
        raise ConnectionError_(f"{in_dev.device_id}.{in_port.name} is not an input port")
    if not out_port.accepts.is_subtype_of(in_port.accepts):
        raise PortTypeMismatchError(out_port.accepts.name, in_port.accepts.name)
    out_key = (out_dev.device_id, out_port.name)
    in_key = (in_dev.device_id, in_port.name)
    if out_key in graph.connections:
        raise ConnectionError_(f"output {out_key[0]}.{out_key[1]} is already connected")
    if in_key in graph.connections.values():
        raise ConnectionError_(f"input {in_key[0]}.{in_key[1]} is already connected")
    graph.connections[out_key] = in_key
    return graph


@dataclass(frozen=True)
class TraceEvent:
    time: SimTime
    device: str
    ports: dict[str, Any]
    summary: str

    def to_record(self) -> dict:
        return {
            "time": str(self.time),
            "device": self.device,
            "ports": self.ports,
            "summary": self.summary,
        }


@dataclass
class Trace:
    events: list[TraceEvent] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_jsonl(self) -> str:
        return "\n".join(
            json.dumps(ev.to_record(), sort_keys=True, separators=(",", ":"))
            for ev in self.events
        ) + ("\n" if self.events else "")


class _Queue:
    """Heap of pending deliveries ordered by (time, device id, sequence)."""

    def __init__(self):
        self._heap: list[tuple] = []
        self._seq = 0

    def push(self, time: SimTime, device_id: str, port_map: dict[str, Signal]) -> None:
        heapq.heappush(self._heap, (time.value, device_id, self._seq, port_map))
        self._seq += 1

    def __bool__(self) -> bool:
        return bool(self._heap)

    def peek_time(self):
        return self._heap[0][0]

    def pop_merged(self) -> tuple[SimTime, str, dict[str, Signal]]:
        """Pop every entry sharing the head's (time, device) and union ports."""
        t, dev, _, ports = heapq.heappop(self._heap)
        merged = dict(ports)
        while self._heap and self._heap[0][0] == t and self._heap[0][1] == dev:
            _, _, _, more = heapq.heappop(self._heap)
            for name, sig in more.items():
                if name in merged:
                    raise SimultaneityConflictError(
                        f"two signals reached {dev}.{name} at the same instant {t}"
                    )
                merged[name] = sig
        return SimTime(t), dev, merged


def _route(
    graph: Graph,
    device: Device,
    emissions: Iterable[Emission],
    now: SimTime,
    queue: _Queue,
    warnings: list[str],
) -> None:
    for em in emissions:
        out_port = device.port(em.port)
        if out_port.direction != "output":
            raise ConnectionError_(f"{device.device_id}.{em.port} is not an output port")
        if em.time < now:
            raise CausalityViolationError(
                f"{device.device_id} emitted at {em.time}, before current time {now}"
            )
        target = graph.connections.get((device.device_id, em.port))
        if target is None:
            warnings.append(
                f"dropped signal from {device.device_id}.{em.port} at {em.time}: port not connected"
            )
            continue
        in_dev_id, in_port_name = target
        in_port = graph.device(in_dev_id).port(in_port_name)
        if not em.signal.kind.is_subtype_of(in_port.accepts):
            raise PortTypeMismatchError(em.signal.kind.name, in_port.accepts.name)
        queue.push(em.time, in_dev_id, {in_port_name: em.signal})


def run(graph: Graph, until: SimTime | float | str) -> Trace:
    """Execute the graph up to and including the horizon time.

    Init actions fire first (devices in insertion order, at t=0); the loop
    then pops merged deliveries until the queue drains or the next event
    lies past the horizon.
    """
    horizon = until if isinstance(until, SimTime) else SimTime.from_seconds(until)
    if horizon < TIME_ZERO:
        raise ValueError(f"simulation horizon must be >= 0, got {horizon}")
    queue = _Queue()
    trace = Trace()

    for device in graph.devices.values():
        _route(graph, device, device.init_action(), TIME_ZERO, queue, trace.warnings)

    while queue and queue.peek_time() <= horizon.value:
        now, dev_id, inputs = queue.pop_merged()
        device = graph.device(dev_id)
        emissions = device.event_action(now, inputs)
        _route(graph, device, emissions, now, queue, trace.warnings)
        trace.events.append(
            TraceEvent(
                time=now,
                device=dev_id,
                ports={name: sig.describe() for name, sig in sorted(inputs.items())},
                summary=device.trace_summary(now, inputs, emissions),
            )
        )
    return trace
