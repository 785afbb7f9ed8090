"""Quadrature measurement distributions and Wigner functions.

Everything here works on single-mode density matrices in the truncated Fock
basis, with hbar = 1: the position eigenfunctions are the Hermite functions
psi_n(x) = (sqrt(pi) 2^n n!)^(-1/2) H_n(x) exp(-x^2/2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatchError
from .operators import FockCutoff, GateParams, build_gate
from .states import TruncatedFockState, coherent_series

DEFAULT_WIGNER_NODES = 801


def hermite_functions(xs, dim: int) -> np.ndarray:
    """psi_0..psi_{dim-1} evaluated at each x; shape (len(xs), dim).

    Stable recurrence psi_n = sqrt(2/n) x psi_{n-1} - sqrt((n-1)/n) psi_{n-2};
    the exponential sits inside psi_0, so nothing overflows.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    out = np.zeros((xs.size, dim))
    out[:, 0] = math.pi ** -0.25 * np.exp(-0.5 * xs ** 2)
    if dim > 1:
        out[:, 1] = math.sqrt(2.0) * xs * out[:, 0]
    for n in range(2, dim):
        out[:, n] = math.sqrt(2.0 / n) * xs * out[:, n - 1] - math.sqrt((n - 1) / n) * out[:, n - 2]
    return out


def _single_mode_rho(state: TruncatedFockState) -> np.ndarray:
    if state.num_modes != 1:
        raise ShapeMismatchError(
            f"phase-space functions take single-mode states, got {state.num_modes} modes"
        )
    return state.density_matrix()


def quadrature_pdf(state: TruncatedFockState, xs, angle: float = 0.0) -> np.ndarray:
    """Homodyne density p(x) at quadrature angle phi.

    Rotates the state by -phi (x_phi = R(phi)+ x R(phi)) and evaluates
    p(x) = sum_{mn} psi_m(x) rho_mn psi_n(x).
    """
    rho = _single_mode_rho(state)
    dim = rho.shape[0]
    if angle != 0.0:
        u = build_gate("rotation", GateParams(phi=-angle), FockCutoff(dim)).matrix
        rho = u @ rho @ u.conj().T
    psi = hermite_functions(xs, dim)
    vals = np.einsum("xm,mn,xn->x", psi, rho, psi)
    return np.maximum(vals.real, 0.0)


def heterodyne_pdf(state: TruncatedFockState, alphas) -> np.ndarray:
    """Husimi density Q(alpha) = <alpha| rho |alpha> / pi on complex points."""
    rho = _single_mode_rho(state)
    dim = rho.shape[0]
    alphas = np.atleast_1d(np.asarray(alphas, dtype=complex))
    out = np.zeros(alphas.shape, dtype=float)
    for idx, a in np.ndenumerate(alphas):
        c = coherent_series(a, dim)
        out[idx] = max(float(np.real(np.vdot(c, rho @ c))), 0.0)
    return out / math.pi


@dataclass(frozen=True)
class WignerGrid:
    """Wigner function samples on a rectangular (x, p) grid, row-major in x."""

    x_axis: np.ndarray
    p_axis: np.ndarray
    values: np.ndarray


def wigner_grid(
    state: TruncatedFockState, x_axis, p_axis, quadrature_nodes: int = DEFAULT_WIGNER_NODES
) -> WignerGrid:
    """W(x, p) = (1/pi) Int <x+y| rho |x-y> e^{2ipy} dy on a grid.

    The y integral runs over Gauss-Legendre nodes on [-ymax, ymax] with
    ymax = 8 + max|x|, wide enough that the Gaussian tails of the Hermite
    functions are below double precision.
    """
    rho = _single_mode_rho(state)
    dim = rho.shape[0]
    xg = np.asarray(x_axis, dtype=float)
    pg = np.asarray(p_axis, dtype=float)
    ymax = 8.0 + float(np.max(np.abs(xg))) if xg.size else 8.0
    ys, wy = np.polynomial.legendre.leggauss(quadrature_nodes)
    ys = ys * ymax
    wy = wy * ymax
    phase = np.exp(2j * np.outer(pg, ys))
    values = np.zeros((xg.size, pg.size))
    for i, x in enumerate(xg):
        plus = hermite_functions(x + ys, dim)
        minus = hermite_functions(x - ys, dim)
        f = np.einsum("ym,mn,yn->y", plus, rho, minus)
        values[i, :] = (phase @ (wy * f)).real / math.pi
    return WignerGrid(x_axis=xg, p_axis=pg, values=values)


def default_phase_space_axes(span: float = 5.0, points: int = 101) -> tuple[np.ndarray, np.ndarray]:
    axis = np.linspace(-span, span, points)
    return axis, axis.copy()
