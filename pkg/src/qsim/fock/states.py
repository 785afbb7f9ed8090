"""State preparation and manipulation on truncated Fock spaces.

States live on ``num_modes`` modes with a shared per-mode cutoff. Pure states
are flat complex vectors of length ``dim**num_modes``; mixed states are dense
density matrices. Mode 0 owns the slowest-varying tensor index.

Preparation of infinite-series states (coherent, squeezed, displaced-squeezed)
truncates the exact coefficient series at the cutoff, records a warning flag
when the discarded tail mass exceeds ``tail_tolerance``, and renormalizes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import CutoffExceededError, NumericFailureError, ShapeMismatchError
from .operators import FockCutoff, ModeOperator

DEFAULT_TAIL_TOLERANCE = 1e-6
NORM_TOLERANCE = 1e-12


@dataclass
class TruncatedFockState:
    """State of one or more truncated modes, pure (vector) or mixed (rho)."""

    cutoff: FockCutoff
    num_modes: int
    vector: np.ndarray | None = None
    rho: np.ndarray | None = None
    truncation_warning: bool = False

    def __post_init__(self):
        if (self.vector is None) == (self.rho is None):
            raise ShapeMismatchError("state needs exactly one of vector or rho")
        n = self.cutoff.dim ** self.num_modes
        if self.vector is not None:
            v = np.asarray(self.vector, dtype=complex).reshape(-1)
            if v.shape[0] != n:
                raise ShapeMismatchError(f"vector length {v.shape[0]} != dim**modes = {n}")
            self.vector = v
        else:
            r = np.asarray(self.rho, dtype=complex)
            if r.shape != (n, n):
                raise ShapeMismatchError(f"rho shape {r.shape} != ({n}, {n})")
            self.rho = r

    @property
    def is_pure(self) -> bool:
        return self.vector is not None

    @property
    def dim(self) -> int:
        return self.cutoff.dim

    def norm(self) -> float:
        if self.is_pure:
            return float(np.linalg.norm(self.vector))
        return float(np.real(np.trace(self.rho)))

    def density_matrix(self) -> np.ndarray:
        if self.is_pure:
            return np.outer(self.vector, self.vector.conj())
        return self.rho

    def as_mixed(self) -> "TruncatedFockState":
        if not self.is_pure:
            return self
        return TruncatedFockState(
            self.cutoff, self.num_modes, rho=self.density_matrix(),
            truncation_warning=self.truncation_warning,
        )

    def copy(self) -> "TruncatedFockState":
        return TruncatedFockState(
            self.cutoff,
            self.num_modes,
            vector=None if self.vector is None else self.vector.copy(),
            rho=None if self.rho is None else self.rho.copy(),
            truncation_warning=self.truncation_warning,
        )


def _hermite_complex(n_max: int, y: complex) -> np.ndarray:
    """Physicists' Hermite polynomials H_0..H_n at a complex point.

    Recurrence H_{n+1} = 2y H_n - 2n H_{n-1}; the scipy evaluators only take
    real arguments so this is rolled by hand.
    """
    h = np.zeros(n_max + 1, dtype=complex)
    h[0] = 1.0
    if n_max >= 1:
        h[1] = 2.0 * y
    for n in range(1, n_max):
        h[n + 1] = 2.0 * y * h[n] - 2.0 * n * h[n - 1]
    return h


def _sqrt_factorials(dim: int) -> np.ndarray:
    ns = np.arange(dim)
    return np.exp(0.5 * np.cumsum(np.concatenate(([0.0], np.log(ns[1:])))))


def coherent_series(alpha: complex, dim: int) -> np.ndarray:
    """c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)."""
    ns = np.arange(dim)
    pref = math.exp(-0.5 * abs(alpha) ** 2)
    return pref * np.power(complex(alpha), ns) / _sqrt_factorials(dim)


def squeezed_series(z: complex, dim: int) -> np.ndarray:
    """Squeezed vacuum S(z)|0>: even coefficients only.

    c_{2n} = sqrt(sech r) sqrt((2n)!) / (2^n n!) (-e^{i phi} tanh r)^n
    with z = r e^{i phi}.
    """
    r = abs(z)
    phi = math.atan2(z.imag, z.real) if r > 0 else 0.0
    c = np.zeros(dim, dtype=complex)
    sf = _sqrt_factorials(dim)
    base = -np.exp(1j * phi) * math.tanh(r)
    sech = 1.0 / math.cosh(r)
    for n in range(0, (dim + 1) // 2):
        if 2 * n >= dim:
            break
        c[2 * n] = math.sqrt(sech) * sf[2 * n] / (2.0 ** n * math.factorial(n)) * base ** n
    return c


def displaced_squeezed_series(alpha: complex, z: complex, dim: int) -> np.ndarray:
    """D(alpha) S(z) |0> coefficients.

    c_n = pref (u t)^n H_n(y) / sqrt(n! cosh r), with u = e^{i phi/2},
    t = sqrt(tanh(r)/2), y = (alpha cosh r + alpha* e^{i phi} sinh r)
    / (u sqrt(sinh 2r)), pref = exp(-|alpha|^2/2 - alpha*^2 e^{i phi}
    tanh(r)/2). The explicit half-angle factor u keeps the two square-root
    branches consistent. r -> 0 degenerates to 0/0, so small r falls back to
    the coherent series (the limit is exact).
    """
    r = abs(z)
    if r < 1e-14:
        return coherent_series(alpha, dim)
    phi = math.atan2(z.imag, z.real)
    u = np.exp(0.5j * phi)
    t = math.sqrt(math.tanh(r) / 2.0)
    y = (alpha * math.cosh(r) + np.conj(alpha) * np.exp(1j * phi) * math.sinh(r)) / (
        u * math.sqrt(math.sinh(2.0 * r))
    )
    pref = np.exp(-0.5 * abs(alpha) ** 2 - 0.5 * np.conj(alpha) ** 2 * np.exp(1j * phi) * math.tanh(r))
    h = _hermite_complex(dim - 1, y)
    ns = np.arange(dim)
    return pref * (u * t) ** ns * h / (_sqrt_factorials(dim) * math.sqrt(math.cosh(r)))


def prepare_state(
    kind: str,
    cutoff: FockCutoff,
    *,
    n: int = 0,
    alpha: complex = 0j,
    z: complex = 0j,
    tail_tolerance: float = DEFAULT_TAIL_TOLERANCE,
) -> TruncatedFockState:
    """Single-mode state of the requested kind at the given cutoff.

    Kinds: vacuum, fock (photon count ``n``), coherent (``alpha``), squeezed
    (``z = r e^{i phi}``), displaced_squeezed (``alpha`` and ``z``).
    Series kinds renormalize after truncation and flag ``truncation_warning``
    when the discarded tail mass exceeds ``tail_tolerance``.
    """
    dim = cutoff.dim
    if kind == "vacuum":
        v = np.zeros(dim, dtype=complex)
        v[0] = 1.0
        return TruncatedFockState(cutoff, 1, vector=v)
    if kind == "fock":
        if not 0 <= n < dim:
            raise CutoffExceededError(f"fock level {n} outside truncated basis 0..{dim - 1}")
        v = np.zeros(dim, dtype=complex)
        v[n] = 1.0
        return TruncatedFockState(cutoff, 1, vector=v)
    if kind == "coherent":
        c = coherent_series(complex(alpha), dim)
    elif kind == "squeezed":
        c = squeezed_series(complex(z), dim)
    elif kind == "displaced_squeezed":
        c = displaced_squeezed_series(complex(alpha), complex(z), dim)
    else:
        raise ValueError(f"unknown state kind {kind!r}")

    kept = float(np.sum(np.abs(c) ** 2))
    if kept <= 0.0:
        raise NumericFailureError(f"{kind} series vanished entirely below cutoff {dim}")
    tail = max(0.0, 1.0 - kept)
    return TruncatedFockState(
        cutoff, 1, vector=c / math.sqrt(kept), truncation_warning=tail > tail_tolerance
    )


def tensor_product(a: TruncatedFockState, b: TruncatedFockState) -> TruncatedFockState:
    """Combined state on a's modes followed by b's modes."""
    if a.cutoff.dim != b.cutoff.dim:
        raise ShapeMismatchError(f"cutoff mismatch {a.cutoff.dim} != {b.cutoff.dim}")
    modes = a.num_modes + b.num_modes
    warn = a.truncation_warning or b.truncation_warning
    if a.is_pure and b.is_pure:
        return TruncatedFockState(
            a.cutoff, modes, vector=np.kron(a.vector, b.vector), truncation_warning=warn
        )
    return TruncatedFockState(
        a.cutoff, modes,
        rho=np.kron(a.density_matrix(), b.density_matrix()),
        truncation_warning=warn,
    )


def _mode_tuple(modes, num_modes: int, arity: int) -> tuple[int, ...]:
    ms = tuple(int(m) for m in (modes if isinstance(modes, (tuple, list)) else (modes,)))
    if len(ms) != arity:
        raise ShapeMismatchError(f"gate arity {arity} != {len(ms)} target modes")
    if len(set(ms)) != len(ms):
        raise ShapeMismatchError(f"duplicate target modes {ms}")
    if any(m < 0 or m >= num_modes for m in ms):
        raise ShapeMismatchError(f"target modes {ms} out of range for {num_modes} modes")
    return ms


def _contract(tensor: np.ndarray, mat: np.ndarray, modes: tuple[int, ...], num_axes: int, dim: int) -> np.ndarray:
    """Apply ``mat`` (reshaped to arity in/out axes) to the given tensor axes."""
    arity = len(modes)
    op = mat.reshape((dim,) * (2 * arity))
    res = np.tensordot(op, tensor, axes=(tuple(range(arity, 2 * arity)), modes))
    order = list(modes) + [ax for ax in range(num_axes) if ax not in modes]
    perm = [order.index(ax) for ax in range(num_axes)]
    return res.transpose(perm)


def apply_gate(state: TruncatedFockState, op: ModeOperator, modes) -> TruncatedFockState:
    """New state with ``op`` applied on the listed modes (others untouched).

    Contraction happens on the state tensor directly, so the full-space matrix
    of the gate is never materialized.
    """
    dim = state.dim
    ms = _mode_tuple(modes, state.num_modes, op.arity)
    if op.matrix.shape[0] != dim ** op.arity:
        raise ShapeMismatchError(
            f"gate dimension {op.matrix.shape[0]} != dim**arity = {dim ** op.arity}"
        )
    shape = (dim,) * state.num_modes
    if state.is_pure:
        t = _contract(state.vector.reshape(shape), op.matrix, ms, state.num_modes, dim)
        return TruncatedFockState(
            state.cutoff, state.num_modes, vector=t.reshape(-1),
            truncation_warning=state.truncation_warning,
        )
    t = state.rho.reshape(shape + shape)
    t = _contract(t, op.matrix, ms, 2 * state.num_modes, dim)
    right = tuple(state.num_modes + m for m in ms)
    t = _contract(t, op.matrix.conj(), right, 2 * state.num_modes, dim)
    n = dim ** state.num_modes
    return TruncatedFockState(
        state.cutoff, state.num_modes, rho=t.reshape(n, n),
        truncation_warning=state.truncation_warning,
    )


def inner_product(a: TruncatedFockState, b: TruncatedFockState) -> complex:
    """<a|b> for pure states on matching mode counts."""
    if not (a.is_pure and b.is_pure):
        raise ShapeMismatchError("inner product is defined for pure states")
    if a.cutoff.dim != b.cutoff.dim or a.num_modes != b.num_modes:
        raise ShapeMismatchError("inner product needs matching cutoff and mode count")
    return complex(np.vdot(a.vector, b.vector))


def partial_trace(state: TruncatedFockState, keep_modes) -> TruncatedFockState:
    """Reduced density matrix over ``keep_modes`` (order preserved as given)."""
    keep = tuple(int(m) for m in (keep_modes if isinstance(keep_modes, (tuple, list)) else (keep_modes,)))
    if len(set(keep)) != len(keep) or any(m < 0 or m >= state.num_modes for m in keep):
        raise ShapeMismatchError(f"bad keep_modes {keep} for {state.num_modes} modes")
    dim = state.dim
    m = state.num_modes
    rho = state.density_matrix().reshape((dim,) * (2 * m))
    drop = [ax for ax in range(m) if ax not in keep]
    # trace out dropped modes highest-first so axis numbers stay valid
    for ax in sorted(drop, reverse=True):
        rho = np.trace(rho, axis1=ax, axis2=ax + (rho.ndim // 2))
    # remaining mode order is ascending; permute to requested order
    asc = sorted(keep)
    if asc != list(keep):
        k = len(keep)
        perm = [asc.index(mode) for mode in keep]
        rho = rho.transpose(perm + [k + p for p in perm])
    n = dim ** len(keep)
    return TruncatedFockState(
        state.cutoff, len(keep), rho=rho.reshape(n, n),
        truncation_warning=state.truncation_warning,
    )


def joint_photon_number_distribution(state: TruncatedFockState) -> np.ndarray:
    """P(n_0, ..., n_{M-1}) as an array of shape (dim,) * num_modes."""
    dim = state.dim
    shape = (dim,) * state.num_modes
    if state.is_pure:
        p = np.abs(state.vector.reshape(shape)) ** 2
    else:
        p = np.real(np.diag(state.rho)).reshape(shape)
    return np.maximum(p, 0.0)


def photon_number_distribution(state: TruncatedFockState, mode: int = 0) -> np.ndarray:
    """Marginal photon-number probabilities of one mode."""
    joint = joint_photon_number_distribution(state)
    axes = tuple(ax for ax in range(state.num_modes) if ax != mode)
    return joint.sum(axis=axes) if axes else joint


def mean_photon_number(state: TruncatedFockState, mode: int = 0) -> float:
    p = photon_number_distribution(state, mode)
    return float(np.dot(p, np.arange(state.dim)))


def expectation_value(state: TruncatedFockState, op: ModeOperator, modes) -> complex:
    """<op> on the listed modes (identity on the rest): Tr(op rho_reduced)."""
    ms = _mode_tuple(modes, state.num_modes, op.arity)
    red = partial_trace(state, ms)
    if op.matrix.shape[0] != red.rho.shape[0]:
        raise ShapeMismatchError(
            f"operator dimension {op.matrix.shape[0]} != reduced state dimension {red.rho.shape[0]}"
        )
    return complex(np.trace(op.matrix @ red.rho))
