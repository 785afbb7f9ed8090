"""Ideal passive optics: phase shifter, displacer, fiber, beam splitter.

All transforms are lossless. Single-mode elements mutate the state inside the
signal's shared handle, so entanglement with modes elsewhere is preserved.
The beam splitter is the one element that joins two signals: its outputs
reference ONE joint two-mode handle.
"""

from __future__ import annotations

import dataclasses
import decimal
import math

from ..des.engine import Device, Emission, Port
from ..des.signals import (
    PHOTONIC_QUANTUM_SIGNAL,
    QuantumPayload,
    Signal,
    StateHandle,
    photonic_signal,
)
from ..des.simtime import SimTime, time_context
from ..errors import ShapeMismatchError
from ..fock.operators import FockCutoff, GateParams, build_gate
from ..fock.states import apply_gate, prepare_state, tensor_product
from ..temporal import (
    OverlapWeight,
    overlap_lambda_closed_form,
    overlap_lambda_quadrature,
    partial_overlap_bs_apply,
)

SPEED_OF_LIGHT_M_PER_S = 299792458
DEFAULT_REFRACTIVE_INDEX = 1.45


def fiber_delay(length_m, refractive_index=DEFAULT_REFRACTIVE_INDEX) -> SimTime:
    """Propagation delay tau = length / (c / n), exact in decimal arithmetic."""
    length = decimal.Decimal(repr(length_m)) if isinstance(length_m, float) else decimal.Decimal(length_m)
    index = (
        decimal.Decimal(repr(refractive_index))
        if isinstance(refractive_index, float)
        else decimal.Decimal(refractive_index)
    )
    if length < 0:
        raise ValueError(f"fiber length must be >= 0, got {length}")
    if index < 1:
        raise ValueError(f"refractive index must be >= 1, got {index}")
    ctx = time_context()
    tau = ctx.divide(ctx.multiply(length, index), decimal.Decimal(SPEED_OF_LIGHT_M_PER_S))
    return SimTime(tau)


class _SingleModeGateDevice(Device):
    """Shared shape for elements that apply one gate to one passing mode."""

    def __init__(self, device_id: str, cutoff: FockCutoff):
        super().__init__(device_id)
        self.cutoff = cutoff

    def ports(self) -> tuple[Port, ...]:
        return (
            Port("in", "input", PHOTONIC_QUANTUM_SIGNAL),
            Port("out", "output", PHOTONIC_QUANTUM_SIGNAL),
        )

    def _gate(self, payload: QuantumPayload):
        raise NotImplementedError

    def _delay(self) -> SimTime | None:
        return None

    def _shift_envelope(self, env):
        return env

    def event_action(self, time: SimTime, inputs: dict[str, Signal]) -> list[Emission]:
        signal = inputs.get("in")
        if signal is None or not isinstance(signal.payload, QuantumPayload):
            raise ShapeMismatchError(f"{self.device_id} expects a quantum signal on port 'in'")
        payload = signal.payload
        gate = self._gate(payload)
        if gate is not None:
            payload.handle.state = apply_gate(payload.handle.state, gate, (payload.mode,))
        delay = self._delay()
        t_out = time if delay is None else time + delay
        env = self._shift_envelope(payload.envelope)
        return [Emission("out", photonic_signal(payload.handle, payload.mode, env), t_out)]


class PhaseShifter(_SingleModeGateDevice):
    """Rotation exp(i phi n) on the passing mode; zero dwell time."""

    def __init__(self, device_id: str, cutoff: FockCutoff, phi: float = 0.0):
        super().__init__(device_id, cutoff)
        self.phi = float(phi)

    def _gate(self, payload):
        if self.phi == 0.0:
            return None
        return build_gate("rotation", GateParams(phi=self.phi), self.cutoff)


class Displacer(_SingleModeGateDevice):
    """Displacement D(alpha) on the passing mode; zero dwell time."""

    def __init__(self, device_id: str, cutoff: FockCutoff, alpha: complex = 0j):
        super().__init__(device_id, cutoff)
        self.alpha = complex(alpha)

    def _gate(self, payload):
        if self.alpha == 0j:
            return None
        return build_gate("displacement", GateParams(alpha=self.alpha), self.cutoff)


class IdealFiber(_SingleModeGateDevice):
    """Lossless fiber: delay tau = l n / c and phase rotation exp(i omega tau n).

    The delay is exact decimal; the phase uses the envelope's carrier
    frequency, so the photon-number distribution is untouched.
    """

    def __init__(
        self,
        device_id: str,
        cutoff: FockCutoff,
        length: float = 0.0,
        refractive_index: float = DEFAULT_REFRACTIVE_INDEX,
    ):
        super().__init__(device_id, cutoff)
        self.length = float(length)
        self.refractive_index = float(refractive_index)
        self.tau = fiber_delay(length, refractive_index)

    def _gate(self, payload):
        angle = payload.envelope.omega * float(self.tau)
        if angle == 0.0:
            return None
        return build_gate("rotation", GateParams(phi=angle), self.cutoff)

    def _delay(self):
        return self.tau

    def _shift_envelope(self, env):
        return dataclasses.replace(env, t0=env.t0 + float(self.tau))


class NonPolarizingBeamSplitter(Device):
    """Overlap-aware beam splitter: theta = pi/4, phi = 0 gives 50:50.

    One quantum input interferes with vacuum on the empty port (a plain joint
    split). Two inputs arriving in one merged event interfere to the degree
    their envelopes overlap: Lambda is computed from the envelopes and the
    partial-overlap mixture channel is applied. Both outputs always share one
    joint two-mode handle (out_a -> mode 0, out_b -> mode 1).
    """

    def __init__(
        self,
        device_id: str,
        cutoff: FockCutoff,
        theta: float = math.pi / 4,
        phi: float = 0.0,
        overlap_method: str = "quadrature",
    ):
        super().__init__(device_id)
        self.cutoff = cutoff
        self.theta = float(theta)
        self.phi = float(phi)
        if overlap_method not in ("quadrature", "closed_form"):
            raise ValueError(f"unknown overlap method {overlap_method!r}")
        self.overlap_method = overlap_method
        self.last_overlap: OverlapWeight | None = None
        self.last_output_handle: StateHandle | None = None

    def ports(self) -> tuple[Port, ...]:
        return (
            Port("in_a", "input", PHOTONIC_QUANTUM_SIGNAL),
            Port("in_b", "input", PHOTONIC_QUANTUM_SIGNAL),
            Port("out_a", "output", PHOTONIC_QUANTUM_SIGNAL),
            Port("out_b", "output", PHOTONIC_QUANTUM_SIGNAL),
        )

    def _overlap(self, env_a, env_b) -> OverlapWeight:
        if self.overlap_method == "closed_form":
            return overlap_lambda_closed_form(env_a, env_b)
        return overlap_lambda_quadrature(env_a, env_b)

    @staticmethod
    def _single_mode_state(payload: QuantumPayload):
        if payload.handle.num_modes != 1:
            raise ShapeMismatchError(
                "beam splitter inputs must be single-mode handles or one shared "
                f"two-mode handle; got a {payload.handle.num_modes}-mode handle"
            )
        return payload.handle.state

    def event_action(self, time: SimTime, inputs: dict[str, Signal]) -> list[Emission]:
        payloads = {
            name: sig.payload
            for name, sig in inputs.items()
            if isinstance(sig.payload, QuantumPayload)
        }
        if not payloads:
            raise ShapeMismatchError(f"{self.device_id} received no quantum inputs")

        if len(payloads) == 1:
            name, payload = next(iter(payloads.items()))
            state = self._single_mode_state(payload)
            vac = prepare_state("vacuum", self.cutoff)
            joint = tensor_product(state, vac) if name == "in_a" else tensor_product(vac, state)
            bs = build_gate("beamsplitter", GateParams(theta=self.theta, phi=self.phi), self.cutoff)
            out_state = apply_gate(joint, bs, (0, 1))
            self.last_overlap = None
            env_a = env_b = payload.envelope
        else:
            pa, pb = payloads["in_a"], payloads["in_b"]
            env_a, env_b = pa.envelope, pb.envelope
            overlap = self._overlap(env_a, env_b)
            self.last_overlap = overlap
            if pa.handle is pb.handle:
                if (pa.mode, pb.mode) != (0, 1) or pa.handle.num_modes != 2:
                    raise ShapeMismatchError(
                        "shared-handle beam splitter input must be modes (0, 1) of a "
                        "two-mode state"
                    )
                joint = pa.handle.state
            else:
                joint = tensor_product(self._single_mode_state(pa), self._single_mode_state(pb))
            out_state = partial_overlap_bs_apply(joint, overlap, self.theta, self.phi)

        handle = StateHandle(out_state)
        self.last_output_handle = handle
        return [
            Emission("out_a", photonic_signal(handle, 0, env_a), time),
            Emission("out_b", photonic_signal(handle, 1, env_b), time),
        ]

    def trace_summary(self, time, inputs, emissions) -> str:
        lam = "none" if self.last_overlap is None else f"{self.last_overlap.value:.6f}"
        return f"NonPolarizingBeamSplitter mixed {sorted(inputs)} (overlap {lam})"
