"""Ideal photon-number detection.

Two modes: ``distribution`` reports the full photon-number distribution of
the detected mode (RNG-free, the default for reproducible goldens), and
``sample`` draws a definite count from it with the injected generator. The
detector keeps the received payload so experiment harnesses can inspect the
joint state behind coincidences.
"""

from __future__ import annotations

import numpy as np

from ..des.engine import Device, Emission, Port
from ..des.signals import GENERIC_SIGNAL, PHOTONIC_QUANTUM_SIGNAL, QuantumPayload, Signal, classical_signal
from ..des.simtime import SimTime
from ..errors import ShapeMismatchError
from ..fock.states import photon_number_distribution


class PhotonDetector(Device):
    def __init__(self, device_id: str, mode: str = "distribution", rng: np.random.Generator | None = None):
        super().__init__(device_id)
        if mode not in ("distribution", "sample"):
            raise ValueError(f"detector mode must be distribution or sample, got {mode!r}")
        if mode == "sample" and rng is None:
            raise ValueError("sample mode needs a seeded random generator")
        self.mode = mode
        self.rng = rng
        self.records: list[dict] = []
        self.last_payload: QuantumPayload | None = None

    def ports(self) -> tuple[Port, ...]:
        return (
            Port("in", "input", PHOTONIC_QUANTUM_SIGNAL),
            Port("out", "output", GENERIC_SIGNAL),
        )

    def event_action(self, time: SimTime, inputs: dict[str, Signal]) -> list[Emission]:
        signal = inputs.get("in")
        if signal is None or not isinstance(signal.payload, QuantumPayload):
            raise ShapeMismatchError(f"{self.device_id} expects a quantum signal on port 'in'")
        payload = signal.payload
        self.last_payload = payload
        dist = photon_number_distribution(payload.handle.state, payload.mode)
        total = float(dist.sum())
        record: dict = {"time": str(time)}
        if self.mode == "distribution":
            record["distribution"] = [float(p) for p in dist]
        else:
            outcome = int(self.rng.choice(dist.size, p=dist / total))
            record["outcome"] = outcome
        self.records.append(record)
        return [Emission("out", classical_signal(record), time)]

    def trace_summary(self, time, inputs, emissions) -> str:
        rec = self.records[-1] if self.records else {}
        if "outcome" in rec:
            return f"PhotonDetector counted {rec['outcome']}"
        mean = 0.0
        if "distribution" in rec:
            mean = float(np.dot(rec["distribution"], np.arange(len(rec["distribution"]))))
        return f"PhotonDetector mean count {mean:.6f}"
