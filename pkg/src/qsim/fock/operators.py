"""Operator construction on truncated Fock spaces.

All matrices are dense complex numpy arrays of size ``dim**arity``. Gates are
built by exponentiating anti-Hermitian generators assembled from the truncated
ladder matrices, so they stay unitary to machine precision even though the
ladder algebra itself is violated on the top basis state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from ..errors import InvalidCutoffError, ShapeMismatchError

HBAR = 1.0

GATE_KINDS = (
    "ladder",
    "number",
    "displacement",
    "squeeze",
    "rotation",
    "beamsplitter",
    "cubic_phase",
    "projector",
    "custom",
)


@dataclass(frozen=True)
class FockCutoff:
    """Photon-number truncation: the basis is |0> .. |dim-1| per mode."""

    dim: int

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or self.dim < 2:
            raise InvalidCutoffError(f"cutoff dim must be an integer >= 2, got {self.dim!r}")


@dataclass(frozen=True)
class ModeOperator:
    """Dense operator on ``arity`` truncated modes."""

    arity: int
    matrix: np.ndarray
    kind: str = "custom"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatchError(f"operator matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)

    @property
    def total_dim(self) -> int:
        return self.matrix.shape[0]

    def dagger(self) -> "ModeOperator":
        return ModeOperator(self.arity, self.matrix.conj().T, self.kind)


@dataclass(frozen=True)
class GateParams:
    """Parameter bundle for gate construction.

    alpha: displacement amplitude (complex).
    z: squeeze parameter z = r e^{i phi} with r >= 0.
    theta, phi: beamsplitter angles; t = cos(theta) is the transmittivity and
        r = e^{i phi} sin(theta) the reflectivity. phi doubles as the rotation
        angle for the rotation gate.
    gamma: cubic-phase strength.
    """

    alpha: complex = 0j
    z: complex = 0j
    theta: float = 0.0
    phi: float = 0.0
    gamma: float = 0.0
    hbar: float = field(default=HBAR)

    def __post_init__(self):
        vals = (self.alpha, self.z, self.theta, self.phi, self.gamma, self.hbar)
        if not all(np.isfinite(np.asarray(v, dtype=complex)).all() for v in vals):
            raise ValueError("gate parameters must be finite")


def ladder_operators(cutoff: FockCutoff) -> tuple[ModeOperator, ModeOperator, ModeOperator]:
    """Annihilation, creation, and number operators at the given cutoff.

    creation[n+1, n] = sqrt(n+1); annihilation is its adjoint; the number
    operator comes out exactly diagonal (0, 1, ..., dim-1).
    """
    dim = cutoff.dim
    adag = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(dim - 1)
    adag[ns + 1, ns] = np.sqrt(ns + 1.0)
    a = adag.conj().T
    # built directly so the diagonal is exactly 0..dim-1, not sqrt(n)^2
    number = np.diag(np.arange(dim, dtype=float)).astype(complex)
    return (
        ModeOperator(1, a, "ladder"),
        ModeOperator(1, adag, "ladder"),
        ModeOperator(1, number, "number"),
    )


def position_operator(cutoff: FockCutoff, hbar: float = HBAR) -> np.ndarray:
    a, adag, _ = ladder_operators(cutoff)
    return math.sqrt(hbar / 2.0) * (a.matrix + adag.matrix)


def _bs_generator(theta: float, phi: float, dim: int) -> np.ndarray:
    a, adag, _ = ladder_operators(FockCutoff(dim))
    eye = np.eye(dim)
    a1 = np.kron(a.matrix, eye)
    a2 = np.kron(eye, a.matrix)
    a1d = np.kron(adag.matrix, eye)
    a2d = np.kron(eye, adag.matrix)
    return theta * (np.exp(1j * phi) * (a1 @ a2d) - np.exp(-1j * phi) * (a1d @ a2))


def build_gate(kind: str, params: GateParams, cutoff: FockCutoff) -> ModeOperator:
    """Dense unitary gate of the requested kind.

    displacement: exp(alpha a+ - alpha* a)
    squeeze:      exp((z* a^2 - z a+^2)/2)
    rotation:     exp(i phi a+a)
    beamsplitter: exp(theta (e^{i phi} a1 a2+ - e^{-i phi} a1+ a2)), arity 2
    cubic_phase:  exp(i gamma x^3 / (3 hbar))
    """
    dim = cutoff.dim
    a, adag, number = ladder_operators(cutoff)
    if kind == "displacement":
        gen = params.alpha * adag.matrix - np.conj(params.alpha) * a.matrix
        arity = 1
    elif kind == "squeeze":
        gen = 0.5 * (
            np.conj(params.z) * (a.matrix @ a.matrix)
            - params.z * (adag.matrix @ adag.matrix)
        )
        arity = 1
    elif kind == "rotation":
        gen = 1j * params.phi * number.matrix
        arity = 1
    elif kind == "beamsplitter":
        gen = _bs_generator(params.theta, params.phi, dim)
        arity = 2
    elif kind == "cubic_phase":
        x = position_operator(cutoff, params.hbar)
        gen = 1j * params.gamma / (3.0 * params.hbar) * (x @ x @ x)
        arity = 1
    else:
        raise ValueError(f"unknown gate kind {kind!r}")
    return ModeOperator(arity, expm(gen), kind)


def beamsplitter(theta: float, phi: float, cutoff: FockCutoff) -> ModeOperator:
    return build_gate("beamsplitter", GateParams(theta=theta, phi=phi), cutoff)


def embed_operator(
    op: ModeOperator, target_modes: tuple[int, ...] | list[int], total_modes: int, cutoff: FockCutoff
) -> ModeOperator:
    """Extend ``op`` to ``total_modes`` modes, acting as identity elsewhere.

    Mode ordering follows the convention that consecutive index groups are
    consecutive modes (mode 0 owns the slowest-varying index).
    """
    modes = tuple(int(m) for m in target_modes)
    if len(modes) != op.arity:
        raise ShapeMismatchError(f"operator arity {op.arity} != {len(modes)} target modes")
    if len(set(modes)) != len(modes):
        raise ShapeMismatchError(f"duplicate target modes {modes}")
    if any(m < 0 or m >= total_modes for m in modes):
        raise ShapeMismatchError(f"target modes {modes} out of range for {total_modes} modes")

    dim = cutoff.dim
    if op.matrix.shape[0] != dim ** op.arity:
        raise ShapeMismatchError(
            f"operator dimension {op.matrix.shape[0]} != dim**arity = {dim ** op.arity}"
        )

    # kron places op on the leading modes; a tensor transpose then routes each
    # operator axis to its target mode.
    rest = dim ** (total_modes - op.arity)
    full = np.kron(op.matrix, np.eye(rest, dtype=complex))
    order = list(modes) + [m for m in range(total_modes) if m not in modes]
    # order[k] = mode currently sitting at tensor position k; invert it.
    perm = [0] * total_modes
    for pos, m in enumerate(order):
        perm[m] = pos
    axes = perm + [total_modes + p for p in perm]
    full = full.reshape((dim,) * (2 * total_modes)).transpose(axes)
    n = dim ** total_modes
    return ModeOperator(total_modes, full.reshape(n, n).copy(), op.kind)


def operator_max_norm_defect(op: ModeOperator) -> float:
    """Max-norm of U+U - I; unitarity check."""
    u = op.matrix
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))
