import math

import numpy as np
import pytest

from qsim.fock.operators import FockCutoff
from qsim.fock.phase_space import (
    default_phase_space_axes,
    hermite_functions,
    heterodyne_pdf,
    quadrature_pdf,
    wigner_grid,
)
from qsim.fock.states import prepare_state

C12 = FockCutoff(12)
_trapz = getattr(np, "trapezoid", None) or np.trapz
INV_SQRT_PI = 0.5641895835477563


def test_hermite_functions_orthonormal():
    x = np.linspace(-10, 10, 4001)
    psi = hermite_functions(x, 6)  # shape (len(x), 6)
    gram = psi.T @ psi * (x[1] - x[0])
    assert np.abs(gram - np.eye(6)).max() < 1e-6


def test_vacuum_quadrature_density():
    vac = prepare_state("vacuum", C12)
    assert quadrature_pdf(vac, np.array([0.0]))[0] == pytest.approx(INV_SQRT_PI, abs=1e-12)
    x = np.linspace(-6, 6, 2001)
    pdf = quadrature_pdf(vac, x)
    assert _trapz(pdf, x) == pytest.approx(1.0, abs=1e-8)


def test_quadrature_angle_shifts_displaced_state():
    alpha = 1.2
    state = prepare_state("coherent", FockCutoff(25), alpha=alpha)
    x = np.linspace(-6, 6, 1201)
    along = quadrature_pdf(state, x, angle=0.0)
    across = quadrature_pdf(state, x, angle=math.pi / 2)
    # mean of x-quadrature is sqrt(2) alpha along, zero across
    assert _trapz(x * along, x) == pytest.approx(math.sqrt(2) * alpha, abs=1e-6)
    assert _trapz(x * across, x) == pytest.approx(0.0, abs=1e-9)


def test_heterodyne_peak_value():
    vac = prepare_state("vacuum", C12)
    assert heterodyne_pdf(vac, 0.0) == pytest.approx(1 / math.pi, abs=1e-12)
    coh = prepare_state("coherent", FockCutoff(25), alpha=0.9)
    assert heterodyne_pdf(coh, 0.9) == pytest.approx(1 / math.pi, abs=1e-9)


def test_wigner_goldens_and_negativity():
    x_axis, p_axis = default_phase_space_axes()
    mid = len(x_axis) // 2
    vac = wigner_grid(prepare_state("vacuum", C12), x_axis, p_axis)
    one = wigner_grid(prepare_state("fock", C12, n=1), x_axis, p_axis)
    assert vac.values[mid, mid] == pytest.approx(1 / math.pi, abs=1e-10)
    assert one.values[mid, mid] == pytest.approx(-1 / math.pi, abs=1e-10)
    assert vac.values.min() > -1e-12
    assert one.values.min() < -0.3  # genuine negative region, not noise


def test_wigner_displaced_peak_moves():
    alpha = 1.0
    x_axis, p_axis = default_phase_space_axes()
    grid = wigner_grid(prepare_state("coherent", FockCutoff(25), alpha=alpha), x_axis, p_axis)
    i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    # peak sits at (sqrt(2) Re alpha, sqrt(2) Im alpha)
    assert x_axis[i] == pytest.approx(math.sqrt(2) * alpha, abs=0.1)
    assert p_axis[j] == pytest.approx(0.0, abs=0.1)


def test_wigner_squeezed_stays_positive_and_normalized():
    x_axis = np.linspace(-6, 6, 121)
    p_axis = np.linspace(-6, 6, 121)
    # Gaussian state: positive up to truncation ripple, which shrinks with dim
    grid = wigner_grid(prepare_state("squeezed", FockCutoff(40), z=0.5), x_axis, p_axis)
    assert grid.values.min() > -1e-7
    mass = _trapz(_trapz(grid.values, p_axis, axis=1), x_axis)
    assert mass == pytest.approx(1.0, abs=1e-3)
