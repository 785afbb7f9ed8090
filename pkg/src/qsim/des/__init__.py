"""Deterministic discrete-event core: timestamps, signals, engine."""

from .engine import Device, Emission, Graph, Port, Trace, TraceEvent, connect, run
from .signals import (
    GENERIC_QUANTUM_SIGNAL,
    GENERIC_SIGNAL,
    PHOTONIC_QUANTUM_SIGNAL,
    SIGNAL_KINDS,
    QuantumPayload,
    Signal,
    SignalKind,
    StateHandle,
    classical_signal,
    kind_by_name,
    photonic_signal,
)
from .simtime import TIME_ZERO, SimTime, set_time_precision, time_precision

__all__ = [
    "Device",
    "Emission",
    "GENERIC_QUANTUM_SIGNAL",
    "GENERIC_SIGNAL",
    "Graph",
    "PHOTONIC_QUANTUM_SIGNAL",
    "Port",
    "QuantumPayload",
    "SIGNAL_KINDS",
    "Signal",
    "SignalKind",
    "SimTime",
    "StateHandle",
    "TIME_ZERO",
    "Trace",
    "TraceEvent",
    "classical_signal",
    "connect",
    "kind_by_name",
    "photonic_signal",
    "run",
    "set_time_precision",
    "time_precision",
]
