"""Joint-detection receiver for BPSK coherent pulse trains.

The transmitter encodes bit b as amplitude (-1)^b alpha (phases {0, pi}).
The receiver tests codeword guesses in lexicographic order: it displaces each
pulse by the amount that would null a matching pulse, applies the vacuum
POVM M_Y = |0><0|^{otimes P}, and on a NO outcome undoes the displacement
exactly (the displacement is unitary, so the pre-test state is restored) and
moves to the next guess.

Pulses that match the guess are nulled to vacuum; each mismatched pulse is
left at amplitude +-2 alpha, so p(Y) = e^{-4 alpha^2 h} for h mismatches.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ShapeMismatchError
from ..fock.operators import FockCutoff, GateParams, build_gate
from ..fock.states import TruncatedFockState, apply_gate, prepare_state, tensor_product

DEFAULT_PULSES = 3
DEFAULT_ALPHA = 0.4
ACCEPT_TOLERANCE = 1e-6


@dataclass(frozen=True)
class PovmPair:
    """Vacuum test on P pulses: M_Y = |0...0><0...0|, M_N = I - M_Y."""

    pulses: int
    cutoff: FockCutoff
    m_yes: np.ndarray
    m_no: np.ndarray

    @classmethod
    def vacuum_test(cls, pulses: int, cutoff: FockCutoff) -> "PovmPair":
        n = cutoff.dim ** pulses
        m_yes = np.zeros((n, n), dtype=complex)
        m_yes[0, 0] = 1.0
        return cls(pulses=pulses, cutoff=cutoff, m_yes=m_yes, m_no=np.eye(n, dtype=complex) - m_yes)

    def probability_yes_dense(self, joint: TruncatedFockState) -> float:
        """Tr[M_Y rho] on the explicit joint state; oracle for the product route."""
        if joint.num_modes != self.pulses:
            raise ShapeMismatchError(f"joint state has {joint.num_modes} modes, POVM expects {self.pulses}")
        return float(np.real(np.trace(self.m_yes @ joint.density_matrix())))


def bits_of(message: int, pulses: int) -> tuple[int, ...]:
    """Most-significant-bit-first binary digits of the message index."""
    if not 0 <= message < 2 ** pulses:
        raise ValueError(f"message {message} outside 0..{2 ** pulses - 1}")
    return tuple((message >> (pulses - 1 - p)) & 1 for p in range(pulses))


def bit_string(bits) -> str:
    return "".join(str(b) for b in bits)


def encode_message(bits, alpha: float, cutoff: FockCutoff) -> list[TruncatedFockState]:
    """One coherent pulse per bit, amplitude (-1)^b alpha."""
    return [
        prepare_state("coherent", cutoff, alpha=((-1) ** int(b)) * alpha)
        for b in bits
    ]


def pulse_vacuum_probability(state: TruncatedFockState) -> float:
    if state.is_pure:
        return float(np.abs(state.vector[0]) ** 2)
    return float(np.real(state.rho[0, 0]))


def _displacements(guess_bits, alpha: float, cutoff: FockCutoff, sign: float):
    return [
        build_gate(
            "displacement",
            GateParams(alpha=sign * (-((-1) ** int(g))) * alpha),
            cutoff,
        )
        for g in guess_bits
    ]


def jdr_receiver_step(
    states: list[TruncatedFockState], guess_bits, alpha: float
) -> tuple[float, list[TruncatedFockState]]:
    """Displace each pulse by -(-1)^{g_p} alpha and apply the vacuum test.

    Returns p(Y) and the displaced pulses (needed to undo the step on N).
    """
    if len(guess_bits) != len(states):
        raise ShapeMismatchError(f"{len(guess_bits)} guess bits for {len(states)} pulses")
    cutoff = states[0].cutoff
    gates = _displacements(guess_bits, alpha, cutoff, sign=+1.0)
    displaced = [apply_gate(s, g, (0,)) for s, g in zip(states, gates)]
    p_yes = float(np.prod([pulse_vacuum_probability(s) for s in displaced]))
    return p_yes, displaced


def invert_receiver_step(
    displaced: list[TruncatedFockState], guess_bits, alpha: float
) -> list[TruncatedFockState]:
    """Exact inverse of the step's displacements; restores the pre-test state."""
    cutoff = displaced[0].cutoff
    gates = _displacements(guess_bits, alpha, cutoff, sign=-1.0)
    return [apply_gate(s, g, (0,)) for s, g in zip(displaced, gates)]


def joint_state(states: list[TruncatedFockState]) -> TruncatedFockState:
    out = states[0]
    for s in states[1:]:
        out = tensor_product(out, s)
    return out


@dataclass
class TranscriptRow:
    round: int
    guess: str
    p_yes: float
    mismatches: int
    outcome: str


@dataclass
class DecodeResult:
    declared: int | None
    declared_bits: str | None
    rounds: int
    transcript: list[TranscriptRow]
    snapshots: list[tuple[str, list[TruncatedFockState]]] = field(default_factory=list)


def sequential_decode(
    message: int,
    pulses: int = DEFAULT_PULSES,
    alpha: float = DEFAULT_ALPHA,
    cutoff: FockCutoff | None = None,
    mode: str = "probability",
    rng: np.random.Generator | None = None,
    start_index: int = 0,
    snapshot_rounds: int = 2,
) -> DecodeResult:
    """Run the sequential decoder against an encoded message.

    Guesses run in lexicographic order from ``start_index`` (wrapping over
    all 2^P codewords); the offset is configurable because the enumeration
    origin is a convention, not physics. ``probability`` mode is RNG-free:
    every guess is tested, p(Y) recorded, and the state restored after each.
    ``sample`` mode draws each outcome and stops at the first YES.

    Snapshots of the pulse states are captured after encoding and after each
    of the first ``snapshot_rounds`` NO outcomes (post-restore).
    """
    if cutoff is None:
        cutoff = FockCutoff(12)
    if mode not in ("probability", "sample"):
        raise ValueError(f"decode mode must be probability or sample, got {mode!r}")
    if mode == "sample" and rng is None:
        raise ValueError("sample mode needs a seeded random generator")
    total = 2 ** pulses
    if not 0 <= start_index < total:
        raise ValueError(f"start_index {start_index} outside 0..{total - 1}")
    message_bits = bits_of(message, pulses)
    states = encode_message(message_bits, alpha, cutoff)

    result = DecodeResult(declared=None, declared_bits=None, rounds=0, transcript=[])
    result.snapshots.append(("after_encoding", [s.copy() for s in states]))

    no_outcomes = 0
    for j in range(total):
        index = (start_index + j) % total
        guess_bits = bits_of(index, pulses)
        p_yes, displaced = jdr_receiver_step(states, guess_bits, alpha)
        mismatches = sum(int(g != b) for g, b in zip(guess_bits, message_bits))
        row = TranscriptRow(
            round=j + 1,
            guess=bit_string(guess_bits),
            p_yes=p_yes,
            mismatches=mismatches,
            outcome="",
        )
        result.transcript.append(row)
        result.rounds = j + 1

        if mode == "sample":
            yes = bool(rng.random() < p_yes)
            row.outcome = "Y" if yes else "N"
            if yes:
                result.declared = index
                result.declared_bits = bit_string(guess_bits)
                break
        else:
            accepted = p_yes >= 1.0 - ACCEPT_TOLERANCE
            row.outcome = "Y" if accepted else "N"
            if accepted and result.declared is None:
                result.declared = index
                result.declared_bits = bit_string(guess_bits)

        states = invert_receiver_step(displaced, guess_bits, alpha)
        no_outcomes += 1
        if no_outcomes <= snapshot_rounds:
            result.snapshots.append(
                (f"after_round_{j + 1}", [s.copy() for s in states])
            )
    return result
