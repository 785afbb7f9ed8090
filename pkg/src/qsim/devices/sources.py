"""Ideal photon and pulse sources.

Sources own no inputs: they emit once from their init action. The DES event
time is the pulse slot (what must coincide for two signals to merge at a
downstream device); the envelope center carries the sub-slot temporal offset
that interference actually depends on, so delay scans shift the envelope
while keeping arrivals merged.
"""

from __future__ import annotations

from ..des.engine import Device, Emission, Port
from ..des.signals import PHOTONIC_QUANTUM_SIGNAL, StateHandle, photonic_signal
from ..des.simtime import SimTime
from ..fock.operators import FockCutoff
from ..fock.states import prepare_state
from ..temporal import GaussianEnvelope


class _EmitOnceSource(Device):
    def __init__(
        self,
        device_id: str,
        cutoff: FockCutoff,
        time=0.0,
        sigma: float = 1.0,
        omega: float = 0.0,
        envelope_center: float | None = None,
    ):
        super().__init__(device_id)
        self.cutoff = cutoff
        self.emit_time = time if isinstance(time, SimTime) else SimTime.from_seconds(time)
        center = float(self.emit_time) if envelope_center is None else float(envelope_center)
        self.envelope = GaussianEnvelope(t0=center, sigma=float(sigma), omega=float(omega))

    def ports(self) -> tuple[Port, ...]:
        return (Port("out", "output", PHOTONIC_QUANTUM_SIGNAL),)

    def _state(self):
        raise NotImplementedError

    def init_action(self) -> list[Emission]:
        handle = StateHandle(self._state())
        return [Emission("out", photonic_signal(handle, 0, self.envelope), self.emit_time)]


class SinglePhotonSource(_EmitOnceSource):
    """Emits exactly one photon, on command, in a Gaussian wave packet."""

    def _state(self):
        return prepare_state("fock", self.cutoff, n=1)


class CoherentSource(_EmitOnceSource):
    """Emits one coherent pulse |alpha> (vacuum displaced by alpha)."""

    def __init__(self, device_id: str, cutoff: FockCutoff, alpha: complex = 0j, **kwargs):
        super().__init__(device_id, cutoff, **kwargs)
        self.alpha = complex(alpha)

    def _state(self):
        return prepare_state("coherent", self.cutoff, alpha=self.alpha)
