"""Signal kinds, payloads, and shared quantum state handles.

Signal kinds form a single-inheritance forest; a connection is legal when the
producer's kind is a subtype of what the consumer accepts. Quantum payloads
do not copy states: signals hold a handle plus a mode index into the handle's
joint state, so a two-mode entangled state stays one object even while its
modes travel through different ports.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

from ..fock.states import TruncatedFockState
from ..temporal import GaussianEnvelope


@dataclass(frozen=True)
class SignalKind:
    name: str
    parent: Optional["SignalKind"] = None

    def is_subtype_of(self, other: "SignalKind") -> bool:
        node: SignalKind | None = self
        while node is not None:
            if node.name == other.name:
                return True
            node = node.parent
        return False


GENERIC_SIGNAL = SignalKind("GenericSignal")
GENERIC_QUANTUM_SIGNAL = SignalKind("GenericQuantumSignal", GENERIC_SIGNAL)
PHOTONIC_QUANTUM_SIGNAL = SignalKind("PhotonicQuantumSignal", GENERIC_QUANTUM_SIGNAL)

SIGNAL_KINDS = {
    k.name: k for k in (GENERIC_SIGNAL, GENERIC_QUANTUM_SIGNAL, PHOTONIC_QUANTUM_SIGNAL)
}


def kind_by_name(name: str) -> SignalKind:
    try:
        return SIGNAL_KINDS[name]
    except KeyError:
        raise KeyError(f"unknown signal kind {name!r}; known: {sorted(SIGNAL_KINDS)}") from None


class StateHandle:
    """Mutable holder of a joint quantum state shared by several signals.

    Devices that consume all modes of a handle may replace the state in
    place; every signal referencing the handle then sees the update.
    """

    __slots__ = ("state",)

    def __init__(self, state: TruncatedFockState):
        self.state = state

    @property
    def num_modes(self) -> int:
        return self.state.num_modes


@dataclass(frozen=True)
class QuantumPayload:
    """One mode of a (possibly joint) state, tagged with its wave packet."""

    handle: StateHandle
    mode: int
    envelope: GaussianEnvelope

    def __post_init__(self):
        if not 0 <= self.mode < self.handle.num_modes:
            raise ValueError(
                f"mode {self.mode} out of range for {self.handle.num_modes}-mode state"
            )


@dataclass(frozen=True)
class Signal:
    kind: SignalKind
    payload: Any = None

    def __post_init__(self):
        quantum = self.kind.is_subtype_of(GENERIC_QUANTUM_SIGNAL)
        if quantum and not isinstance(self.payload, QuantumPayload):
            raise TypeError(f"{self.kind.name} requires a quantum payload")
        if not quantum and isinstance(self.payload, QuantumPayload):
            raise TypeError(f"{self.kind.name} cannot carry a quantum payload")

    def describe(self) -> Any:
        """JSON-ready summary for traces."""
        if isinstance(self.payload, QuantumPayload):
            return {
                "kind": self.kind.name,
                "mode": self.payload.mode,
                "modes_total": self.payload.handle.num_modes,
                "envelope_t0": float(self.payload.envelope.t0),
            }
        return {"kind": self.kind.name, "value": self.payload}


def classical_signal(value: Any) -> Signal:
    return Signal(GENERIC_SIGNAL, value)


def photonic_signal(handle: StateHandle, mode: int, envelope: GaussianEnvelope) -> Signal:
    return Signal(PHOTONIC_QUANTUM_SIGNAL, QuantumPayload(handle, mode, envelope))
